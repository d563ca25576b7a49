#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace {

const std::string kCli = ROOFEM_CLI_PATH;
const std::string kData = ROOFEM_DATA_DIR;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = kCli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        lines.push_back(text.substr(pos, eol - pos));
        pos = eol + 1;
    }
    return lines;
}

const std::string kCommon = "--machine " + kData + "/machines/icl.machine --kernels " + kData +
                            "/kernels";
const std::string kMeasurements = kData + "/measurements/sample_measurements.csv";

} // namespace

TEST_CASE("no arguments prints usage and exits 2") {
    CHECK(run("").exit_code == 2);
    CHECK(run("transmogrify").exit_code == 2);
    CHECK(run("table --bogus-flag 1").exit_code == 2);
    CHECK(run("predict --machine does/not/exist.machine --intensity 1").exit_code == 2);
}

TEST_CASE("table emits the five hot spots with two mismatch flags") {
    RunResult r = run("table " + kCommon);
    CHECK(r.exit_code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] ==
          "kernel,variant,fallback,v_load_bytes,v_store_bytes,intensity_fpb,intensity_2dp,"
          "published,mismatch");
    CHECK(lines[1].find("CalcHourglassControlForElems") == 0);
    CHECK(lines[1].find(",0.27,") != std::string::npos);

    int mismatches = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].rfind(",true") == lines[i].size() - 5) ++mismatches;
    }
    CHECK(mismatches == 2);
    CHECK(lines[2].find(",1.30,") != std::string::npos);
    CHECK(lines[3].find(",1.93,") != std::string::npos);
    CHECK(lines[4].find(",0.69,") != std::string::npos);
    CHECK(lines[5].find(",0.09,") != std::string::npos);
}

TEST_CASE("predict reports the bandwidth-bound performance") {
    RunResult r = run("predict --machine " + kData +
                      "/machines/icl.machine --intensity 0.1 --cores 18 --freq 2.4");
    CHECK(r.exit_code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[1].find("7.1") != std::string::npos);
    CHECK(lines[1].find("memory") != std::string::npos);

    RunResult human = run("predict --machine " + kData +
                          "/machines/icl.machine --intensity 0.1 --format table");
    CHECK(human.out.find("7.1 Gflop/s memory-bound") == 0);
}

TEST_CASE("validate on the bundled data passes and tight thresholds fail") {
    RunResult ok = run("validate " + kCommon + " --measurements " + kMeasurements);
    CHECK(ok.exit_code == 0);
    CHECK(lines_of(ok.out).size() == 23);  // header + 22 rows

    RunResult tight = run("validate " + kCommon + " --measurements " + kMeasurements +
                          " --thresholds 0.001,0.002");
    CHECK(tight.exit_code == 1);  // everything fails the 0.2% bar
}

TEST_CASE("zplot emits the documented columns") {
    RunResult r = run("zplot --measurements " + kMeasurements +
                      " --kernel CalcHourglassControlForElems");
    CHECK(r.exit_code == 0);
    auto lines = lines_of(r.out);
    CHECK(lines[0] == "series,x_perf,y_energy_per_work,cores,freq_ghz,edp");
    CHECK(lines.size() > 3);
}

TEST_CASE("fit-power and optimal run on the sweep data") {
    RunResult fit = run("fit-power --measurements " + kMeasurements +
                        " --kernel CalcHourglassControlForElems --cores 18");
    CHECK(fit.exit_code == 0);
    CHECK(lines_of(fit.out)[0] ==
          "predictor,w0_baseline_w,wd_dynamic_w_per_ghz,fit_residual_rms_w,n_points");

    RunResult best = run("optimal --measurements " + kMeasurements +
                         " --kernel CalcHourglassControlForElems");
    CHECK(best.exit_code == 0);
    CHECK(lines_of(best.out)[0] == "objective,cores,freq_ghz,value");
}

TEST_CASE("oracle stream agrees with its analytic volume") {
    RunResult r = run("oracle --pattern stream --n 100000 --elem-bytes 8");
    CHECK(r.exit_code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[1].find(",0,") != std::string::npos);  // rel_err_load column is 0
}

TEST_CASE("roofline chart goes to CSV or SVG") {
    RunResult csv = run("roofline " + kCommon);
    CHECK(csv.exit_code == 0);
    CHECK(lines_of(csv.out)[0] == "series,x_fpb,y_gflops,marker,flag");

    auto svg_path = std::filesystem::temp_directory_path() / "roofem_test_chart.svg";
    RunResult svg = run("roofline " + kCommon + " --measurements " + kMeasurements +
                        " --out " + svg_path.string());
    CHECK(svg.exit_code == 0);
    std::ifstream in(svg_path);
    REQUIRE(in.good());
    std::string first_line;
    std::getline(in, first_line);
    CHECK(first_line.find("<svg") != std::string::npos);
    std::filesystem::remove(svg_path);
}

TEST_CASE("zplot SVG renders") {
    auto svg_path = std::filesystem::temp_directory_path() / "roofem_test_zplot.svg";
    RunResult svg = run("zplot --measurements " + kMeasurements +
                        " --kernel CalcHourglassControlForElems --out " + svg_path.string());
    CHECK(svg.exit_code == 0);
    std::ifstream in(svg_path);
    REQUIRE(in.good());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content.find("polyline") != std::string::npos);
    std::filesystem::remove(svg_path);
}

TEST_CASE("table format renders aligned output") {
    RunResult r = run("table " + kCommon + " --format table");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("----") != std::string::npos);
    CHECK(r.out.find("EvalEOSForElems") != std::string::npos);
}

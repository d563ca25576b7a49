#include <doctest.h>

#include <random>

#include "roofem/errors.hpp"
#include "roofem/ingest.hpp"

using namespace roofem;

namespace {

const std::string kHeader =
    "region,kernel,cores,freq_mhz,uncore_mhz,runtime_s,flops,load_bytes,store_bytes,"
    "cpu_energy_j,dram_energy_j,work_z,instructions";

const std::string kRow =
    "r0,EvalEOSForElems,1,2400,2000,0.05,6000000,45000000,14000000,4.1,0.3,1000000,2000000";

MachineModel icl() {
    return load_machine_model_file(std::string(ROOFEM_DATA_DIR) + "/machines/icl.machine");
}

std::vector<KernelSpec> shipped_kernels() {
    return load_kernel_dir(std::string(ROOFEM_DATA_DIR) + "/kernels");
}

MeasurementRecord random_record(std::mt19937& rng) {
    std::uniform_real_distribution<double> rt(1e-3, 1e3), en(0.0, 1e5), fr(800.0, 3600.0);
    std::uniform_int_distribution<std::uint64_t> count(0, 1ull << 50);
    MeasurementRecord r;
    r.region = "region" + std::to_string(rng() % 10);
    r.kernel = "kernel" + std::to_string(rng() % 5);
    r.cores = 1 + static_cast<int>(rng() % 104);
    r.freq_mhz = fr(rng);
    if (rng() % 2) r.uncore_mhz = fr(rng);
    r.runtime_s = rt(rng);
    r.flops = count(rng);
    r.load_bytes = count(rng);
    r.store_bytes = count(rng);
    r.cpu_energy_j = en(rng);
    r.dram_energy_j = en(rng);
    r.work_z = 1 + count(rng);
    if (rng() % 2) r.instructions = count(rng);
    return r;
}

} // namespace

TEST_CASE("one valid row parses into one record") {
    auto records = parse_measurements(kHeader + "\n" + kRow + "\n");
    REQUIRE(records.size() == 1);
    const MeasurementRecord& r = records[0];
    CHECK(r.kernel == "EvalEOSForElems");
    CHECK(r.cores == 1);
    CHECK(r.freq_mhz == doctest::Approx(2400.0));
    CHECK(r.uncore_mhz.has_value());
    CHECK(r.flops == 6000000);
    CHECK(r.load_bytes == 45000000);
    CHECK(r.work_z == 1000000);
    CHECK(r.instructions == 2000000);
}

TEST_CASE("header only parses to an empty list") {
    CHECK(parse_measurements(kHeader + "\n").empty());
}

TEST_CASE("optional columns may be absent or empty") {
    std::string no_optionals =
        "region,kernel,cores,freq_mhz,runtime_s,flops,load_bytes,store_bytes,"
        "cpu_energy_j,dram_energy_j,work_z\n"
        "r,k,1,2400,1.0,10,20,30,1.0,0.1,100\n";
    auto records = parse_measurements(no_optionals);
    REQUIRE(records.size() == 1);
    CHECK_FALSE(records[0].uncore_mhz.has_value());
    CHECK_FALSE(records[0].instructions.has_value());

    std::string empty_cells =
        kHeader + "\n" + "r,k,1,2400,,1.0,10,20,30,1.0,0.1,100,\n";
    auto records2 = parse_measurements(empty_cells);
    REQUIRE(records2.size() == 1);
    CHECK_FALSE(records2[0].uncore_mhz.has_value());
    CHECK_FALSE(records2[0].instructions.has_value());
}

TEST_CASE("columns may appear in any order") {
    std::string shuffled =
        "kernel,region,work_z,cores,freq_mhz,runtime_s,flops,load_bytes,store_bytes,"
        "cpu_energy_j,dram_energy_j\n"
        "k,r,100,2,1200,0.5,1,2,3,4.0,0.4\n";
    auto records = parse_measurements(shuffled);
    REQUIRE(records.size() == 1);
    CHECK(records[0].kernel == "k");
    CHECK(records[0].region == "r");
    CHECK(records[0].work_z == 100);
    CHECK(records[0].cores == 2);
}

TEST_CASE("schema errors name the problem column") {
    std::string missing = "region,kernel,cores,freq_mhz,runtime_s\nr,k,1,2400,1.0\n";
    CHECK_THROWS_WITH_AS(parse_measurements(missing), doctest::Contains("flops"), SchemaError);
    CHECK_THROWS_WITH_AS(parse_measurements("bogus_column\n1\n"),
                         doctest::Contains("bogus_column"), SchemaError);
    CHECK_THROWS_AS(parse_measurements(""), SchemaError);
}

TEST_CASE("cell errors name the row and column") {
    std::string bad = kHeader + "\n" +
                      "r0,k,1,2400,2000,not_a_number,6,45,14,4.1,0.3,1000,2\n";
    CHECK_THROWS_WITH_AS(parse_measurements(bad), doctest::Contains("runtime_s"), SyntaxError);
    CHECK_THROWS_WITH_AS(parse_measurements(bad), doctest::Contains("line 2"), SyntaxError);
}

TEST_CASE("invariant violations cite the row") {
    std::string zero_runtime =
        kHeader + "\n" + "r0,k,1,2400,2000,0,6,45,14,4.1,0.3,1000,2\n";
    CHECK_THROWS_WITH_AS(parse_measurements(zero_runtime), doctest::Contains("line 2"),
                         ValidationError);
    std::string zero_work = kHeader + "\n" + "r0,k,1,2400,2000,1.0,6,45,14,4.1,0.3,0,2\n";
    CHECK_THROWS_AS(parse_measurements(zero_work), ValidationError);
}

TEST_CASE("round-trip preserves every field bit-exactly") {
    std::mt19937 rng(51);
    std::vector<MeasurementRecord> records;
    for (int i = 0; i < 200; ++i) records.push_back(random_record(rng));

    auto once = parse_measurements(serialize_measurements(records));
    REQUIRE(once.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) CHECK(once[i] == records[i]);

    auto twice = parse_measurements(serialize_measurements(once));
    for (std::size_t i = 0; i < records.size(); ++i) CHECK(twice[i] == once[i]);
}

TEST_CASE("measured intensity from counters") {
    MeasurementRecord r;
    r.flops = 325000000;
    r.load_bytes = 633000000;
    r.store_bytes = 532000000;
    r.runtime_s = 1.0;
    CHECK(measured_intensity(r) == doctest::Approx(325.0 / 1165.0).epsilon(1e-12));

    r.flops = 0;
    CHECK(measured_intensity(r) == 0.0);

    r.load_bytes = 0;
    r.store_bytes = 0;
    CHECK_THROWS_AS(measured_intensity(r), DomainError);
}

TEST_CASE("records project onto energy samples") {
    auto records = parse_measurements(kHeader + "\n" + kRow + "\n" + kRow + "\n" + kRow + "\n");
    auto samples = to_energy_samples(records);
    REQUIRE(samples.size() == 3);
    CHECK(samples[0].kernel_or_app == "EvalEOSForElems");
    CHECK(samples[0].freq_ghz == doctest::Approx(2.4));
    CHECK(samples[0].runtime_s == doctest::Approx(0.05));
    CHECK(samples[0].cpu_energy_j == doctest::Approx(4.1));
    CHECK(samples[0].work_z == 1000000);
    CHECK(to_energy_samples({}).empty());
}

TEST_CASE("validation of the published eos measurement passes") {
    auto records = parse_measurements(kHeader + "\n" + kRow + "\n");
    ValidationReport report = validate(records, shipped_kernels(), icl());
    REQUIRE(report.rows.size() == 1);
    const ValidationRow& row = report.rows[0];
    REQUIRE(row.predicted_intensity.has_value());
    CHECK(*row.predicted_intensity == doctest::Approx(0.09375).epsilon(1e-12));
    REQUIRE(row.measured_intensity.has_value());
    CHECK(*row.measured_intensity == doctest::Approx(6.0 / 59.0).epsilon(1e-12));
    REQUIRE(row.rel_error.has_value());
    CHECK(*row.rel_error < 0.15);
    CHECK(row.verdict == Verdict::pass);
    CHECK_FALSE(report.any_fail());

    // Measured bandwidth reported exactly as (load + store) / runtime / 1e9.
    CHECK(row.measured_bw_gbs == doctest::Approx(59000000.0 / 0.05 / 1e9).epsilon(1e-15));
    CHECK(row.ceiling_bw_gbs == doctest::Approx(71.0));
}

TEST_CASE("large deviation fails") {
    std::string row = "r0,EvalEOSForElems,1,2400,,0.05,30000000,50000000,50000000,4,0.3,1000000,";
    auto records = parse_measurements(kHeader + "\n" + row + "\n");
    ValidationReport report = validate(records, shipped_kernels(), icl());
    REQUIRE(report.rows.size() == 1);
    CHECK(*report.rows[0].measured_intensity == doctest::Approx(0.30));
    CHECK(report.rows[0].verdict == Verdict::fail);
    CHECK(report.any_fail());
}

TEST_CASE("unknown kernels become warn rows with empty model fields") {
    std::string row = "r0,NotAKernel,1,2400,,0.05,6,45,14,4.1,0.3,1000,";
    auto records = parse_measurements(kHeader + "\n" + row + "\n");
    ValidationReport report = validate(records, shipped_kernels(), icl());
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].verdict == Verdict::warn);
    CHECK_FALSE(report.rows[0].predicted_intensity.has_value());
    CHECK_FALSE(report.rows[0].rel_error.has_value());
    CHECK(report.rows[0].measured_intensity.has_value());
}

TEST_CASE("multi-core records use the multi-thread model where it exists") {
    std::string rows =
        "r0,CalcFBHourglassForceForElems,18,2400,,1.0,824,730,368,4,1,1000,\n"
        "r0,EvalEOSForElems,18,2400,,1.0,6,37,18,4,1,1000,\n";
    auto records = parse_measurements(kHeader + "\n" + rows);
    ValidationReport report = validate(records, shipped_kernels(), icl());
    REQUIRE(report.rows.size() == 2);
    CHECK(*report.rows[0].predicted_intensity == doctest::Approx(824.0 / 1016.0).epsilon(1e-12));
    CHECK(report.rows[0].note.empty());
    // EvalEOSForElems has no multi model: single prediction with a note.
    CHECK(*report.rows[1].predicted_intensity == doctest::Approx(0.09375).epsilon(1e-12));
    CHECK_FALSE(report.rows[1].note.empty());
}

TEST_CASE("ceiling scales with the domain span of the record") {
    std::string row = "r0,EvalEOSForElems,36,2400,,0.05,6,45,14,4.1,0.3,1000,";
    auto records = parse_measurements(kHeader + "\n" + row + "\n");
    ValidationReport report = validate(records, shipped_kernels(), icl());
    CHECK(report.rows[0].ceiling_bw_gbs == doctest::Approx(142.0));  // two domains
}

TEST_CASE("verdicts are monotone in the relative error") {
    auto verdict_for = [&](std::uint64_t flops) {
        std::string row = "r0,EvalEOSForElems,1,2400,,1.0," + std::to_string(flops) +
                          ",48,16,1,0.1,1000,\n";
        auto records = parse_measurements(kHeader + "\n" + row);
        return validate(records, shipped_kernels(), icl()).rows[0];
    };
    // flops 6 -> rel 0; growing flops grows rel_error monotonically.
    Verdict previous = Verdict::pass;
    double previous_err = 0.0;
    for (std::uint64_t f : {6, 7, 8, 9, 12, 20, 60}) {
        ValidationRow row = verdict_for(f);
        CHECK(*row.rel_error >= previous_err);
        CHECK(static_cast<int>(row.verdict) >= static_cast<int>(previous));
        previous_err = *row.rel_error;
        previous = row.verdict;
    }
    CHECK(verdict_for(6).verdict == Verdict::pass);
    CHECK(verdict_for(7).verdict == Verdict::warn);   // rel 1/6
    CHECK(verdict_for(60).verdict == Verdict::fail);  // rel 9
}

TEST_CASE("zero-traffic records become warn rows") {
    std::string row = "r0,EvalEOSForElems,1,2400,,1.0,6,0,0,1,0.1,1000,";
    auto records = parse_measurements(kHeader + "\n" + row + "\n");
    ValidationReport report = validate(records, shipped_kernels(), icl());
    CHECK(report.rows[0].verdict == Verdict::warn);
    CHECK_FALSE(report.rows[0].measured_intensity.has_value());
}

TEST_CASE("custom thresholds move the verdict boundaries") {
    auto records = parse_measurements(kHeader + "\n" + kRow + "\n");
    ValidationThresholds tight{0.01, 0.02};
    ValidationReport report = validate(records, shipped_kernels(), icl(),
                                       BandwidthKind::update, tight);
    CHECK(report.rows[0].verdict == Verdict::fail);  // rel ~0.085 > 0.02
}

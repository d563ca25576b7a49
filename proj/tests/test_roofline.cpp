#include <doctest.h>

#include <random>
#include <sstream>

#include "roofem/errors.hpp"
#include "roofem/roofline.hpp"

using namespace roofem;

namespace {

MachineModel icl() {
    return load_machine_model_file(std::string(ROOFEM_DATA_DIR) + "/machines/icl.machine");
}

RooflinePrediction predict_icl(double i, int cores = 18, double freq = 2.4) {
    static MachineModel m = icl();
    return predict_performance(i, m, cores, freq, false, BandwidthKind::update);
}

} // namespace

TEST_CASE("memory-bound prediction on one domain") {
    RooflinePrediction p = predict_icl(0.1);
    CHECK(p.peak_gflops == doctest::Approx(172.8).epsilon(1e-12));
    CHECK(p.ceiling_used_gbs == doctest::Approx(71.0));
    CHECK(p.predicted_gflops == doctest::Approx(7.1).epsilon(1e-12));
    CHECK(p.bound == Boundedness::memory);
}

TEST_CASE("huge intensity saturates at the peak") {
    RooflinePrediction p = predict_icl(1000.0);
    CHECK(p.predicted_gflops == doctest::Approx(172.8).epsilon(1e-12));
    CHECK(p.bound == Boundedness::compute);
}

TEST_CASE("prediction at the first hot spot intensity") {
    RooflinePrediction p = predict_icl(0.2664);
    CHECK(p.predicted_gflops == doctest::Approx(0.2664 * 71.0).epsilon(1e-12));
    CHECK(p.bound == Boundedness::memory);
}

TEST_CASE("ridge point and tie classification") {
    RooflinePrediction p = predict_icl(0.5);
    CHECK(p.ridge_fpb == doctest::Approx(172.8 / 71.0).epsilon(1e-12));

    RooflinePrediction at_ridge = predict_icl(p.ridge_fpb);
    CHECK(at_ridge.bound == Boundedness::compute);  // tie goes to compute
    RooflinePrediction below = predict_icl(p.ridge_fpb * 0.999);
    CHECK(below.bound == Boundedness::memory);
}

TEST_CASE("non-positive intensity is a domain error") {
    CHECK_THROWS_AS(predict_icl(0.0), DomainError);
    CHECK_THROWS_AS(predict_icl(-1.0), DomainError);
}

TEST_CASE("bandwidth ceiling scales with the domains a core count spans") {
    RooflinePrediction one = predict_icl(0.1, 18);
    RooflinePrediction two = predict_icl(0.1, 19);
    CHECK(one.ceiling_used_gbs == doctest::Approx(71.0));
    CHECK(two.ceiling_used_gbs == doctest::Approx(142.0));
}

TEST_CASE("property: prediction never exceeds either ceiling and is monotone") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> intensity_dist(0.001, 50.0);
    double prev_i = 0.0, prev_p = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        double i = intensity_dist(rng);
        RooflinePrediction p = predict_icl(i);
        CHECK(p.predicted_gflops <= p.peak_gflops + 1e-12);
        CHECK(p.predicted_gflops <= i * p.ceiling_used_gbs + 1e-12);
        if (trial > 0 && i >= prev_i) CHECK(p.predicted_gflops >= prev_p - 1e-12);
        if (trial > 0 && i < prev_i) CHECK(p.predicted_gflops <= prev_p + 1e-12);
        prev_i = i;
        prev_p = p.predicted_gflops;
    }
}

TEST_CASE("ridge consistency: both min arguments agree at the ridge") {
    RooflinePrediction p = predict_icl(172.8 / 71.0);
    double bandwidth_bound = p.intensity_fpb * p.ceiling_used_gbs;
    CHECK(bandwidth_bound == doctest::Approx(p.peak_gflops).epsilon(1e-15));
}

TEST_CASE("chart dataset structure") {
    MachineModel m = icl();
    std::vector<RooflinePrediction> predictions;
    for (double i : {0.09, 0.27, 0.69, 1.30, 1.93})
        predictions.push_back(
            predict_performance(i, m, 18, 2.4, false, BandwidthKind::update, "k"));

    ChartDataset d = roofline_chart(m, predictions);
    int lines = 0, empty = 0, filled = 0;
    for (const ChartRow& r : d.rows) {
        if (r.marker == "line") ++lines;
        else if (r.marker == "empty_circle") ++empty;
        else ++filled;
    }
    CHECK(lines == 6);  // two endpoints for each of bw_update, bw_readonly, peak
    CHECK(empty == 5);
    CHECK(filled == 0);
}

TEST_CASE("empty predictions produce a ceilings-only chart") {
    ChartDataset d = roofline_chart(icl(), {});
    CHECK(d.rows.size() == 6);
    for (const ChartRow& r : d.rows) CHECK(r.marker == "line");
}

TEST_CASE("measured points above the roof are flagged and retained") {
    MachineModel m = icl();
    std::vector<MeasuredPoint> measured = {
        {"ok", 0.1, 5.0},          // below 7.1
        {"too_fast", 0.1, 8.0},    // above 0.1 x 71
        {"peak_break", 10.0, 200}  // above the 172.8 peak
    };
    ChartDataset d = roofline_chart(m, {}, measured);
    REQUIRE(d.rows.size() == 9);
    CHECK(d.rows[6].flag == "");
    CHECK(d.rows[7].flag == "above_roof");
    CHECK(d.rows[8].flag == "above_roof");
}

TEST_CASE("chart CSV has the documented columns") {
    ChartDataset d = roofline_chart(icl(), {});
    std::ostringstream out;
    write_chart_csv(out, d);
    std::string text = out.str();
    CHECK(text.rfind("series,x_fpb,y_gflops,marker,flag\n", 0) == 0);
    CHECK(text.find("bw_update") != std::string::npos);
    CHECK(text.find("bw_readonly") != std::string::npos);
    CHECK(text.find("peak_scalar") != std::string::npos);
}

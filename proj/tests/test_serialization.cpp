#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "hmgroup/errors.hpp"
#include "hmgroup/serialization.hpp"

using namespace hmgroup;

TEST(CostMatrixCsv, RoundTripsExactly) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.01, 3.0);
    SquareMatrix m(7);
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = i; j < 7; ++j) m(i, j) = m(j, i) = u(rng);
    std::stringstream text;
    write_matrix_csv(text, m);
    EXPECT_EQ(load_cost_matrix_csv(text).matrix(), m);
}

TEST(CostMatrixCsv, DiagnosticsNameTheLine) {
    auto load = [](const std::string& s) {
        std::istringstream in(s);
        return load_cost_matrix_csv(in);
    };
    EXPECT_THROW(load(""), ParseError);
    try {
        load("3,4,1\n4,7\n1,3,2\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.row(), 2u);
    }
    try {
        load("3,4,1\n\n4,7,3\n1,x,2\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.row(), 4u);
    }
    EXPECT_THROW(load("1,0\n0,1\n"), ParseError);
    EXPECT_THROW(load("1,2\n3,1\n"), InputError);  // asymmetric
}

TEST(ReceiverCsv, SortsByIdAndValidates) {
    std::istringstream in("receiver_id,snr_db\n2,7.5\n1,-1\n3,12\n");
    const auto rx = load_receivers_csv(in);
    ASSERT_EQ(rx.size(), 3u);
    EXPECT_EQ(rx[0].snr_db, -1.0);
    EXPECT_EQ(rx[1].snr_db, 7.5);
    EXPECT_EQ(rx[2].index, 2u);

    auto load = [](const std::string& s) {
        std::istringstream is(s);
        return load_receivers_csv(is);
    };
    EXPECT_THROW(load("id,snr\n1,2\n"), ParseError);
    EXPECT_THROW(load("receiver_id,snr_db\n"), ParseError);
    EXPECT_THROW(load("receiver_id,snr_db\n1,2\n1,3\n"), ParseError);
    EXPECT_THROW(load("receiver_id,snr_db\n1,2\n3,3\n"), ParseError);
    EXPECT_THROW(load("receiver_id,snr_db\n1,inf\n"), ParseError);
}

TEST(AssignmentJson, OneBasedPartnerArray) {
    const Assignment x({2, 1, 0});
    const auto j = to_json(x);
    EXPECT_EQ(j.dump(), R"({"partner":[3,2,1]})");
    EXPECT_EQ(assignment_from_json(j), x);
    EXPECT_THROW(assignment_from_json(Json::parse(R"({"partner":[2,3,1]})")), InputError);
    EXPECT_THROW(assignment_from_json(Json::parse(R"({"partner":[0]})")), InputError);
    EXPECT_THROW(assignment_from_json(Json::parse(R"([1])")), InputError);
}

TEST(PerturbConfigJson, ReadsKnownKeys) {
    const auto cfg = perturb_config_from_json(Json::parse(R"({"sigma":0.002,"max_retries":7,"seed":99})"));
    EXPECT_EQ(cfg.sigma, 0.002);
    EXPECT_EQ(cfg.max_retries, 7);
    EXPECT_EQ(cfg.seed, 99u);
    const auto partial = perturb_config_from_json(Json::parse(R"({"seed":5})"));
    EXPECT_EQ(partial.sigma, 1e-3);
    EXPECT_EQ(partial.max_retries, 50);
    EXPECT_THROW(perturb_config_from_json(Json::parse(R"({"sigma":0})")), InputError);
    EXPECT_THROW(perturb_config_from_json(Json::parse(R"({"sigma":"big"})")), InputError);
}

TEST(ReportJson, CarriesSchemaAndStrategies) {
    const auto c = CostMatrix::from_rows({{3, 4, 1}, {4, 7, 3}, {1, 3, 2}});
    const auto j = to_json(quasi_optimal_matching(c, PerturbConfig{}), c);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["upper_bound_cost"], 8.0);
    EXPECT_EQ(j["symmetric_cost"], 9.0);
    EXPECT_EQ(j["assignment"]["partner"], Json::parse("[1,3,2]"));
    EXPECT_EQ(j["strategies"]["time_sharing"]["cost"], 12.0);
}

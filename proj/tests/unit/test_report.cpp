#include "../support/corpus.hpp"
#include "common.hpp"
#include "ebs/report.hpp"

using namespace ebs;
using namespace ebs::testing;

TEST_CASE("classification report") {
    Classification c = classify_text(entry("example_c").text);
    Json j = classify_report(c, edp_bound(c));
    CHECK(j["B"] == 3);
    CHECK(j["V"] == Json::array({"x"}));
    CHECK(j["EU"] == Json::array({"v"}));
    CHECK(j["predicates"]["P"] == "existential");
    CHECK(j["terms"]["2^k"] == 2);
    CHECK(dump(j).back() == '\n');
}

TEST_CASE("check report") {
    Classification c = classify_text(entry("example_c").text);
    Json j = check_report(edp_check(c, {"Q"}), {"Q"}, EdpVariant::Base, edp_bound(c));
    CHECK(j["edp"] == true);
    CHECK(j["B"] == 3);
    Json f = check_report(edp_check(c, {"P", "Q"}), {"P", "Q"}, EdpVariant::Base, std::nullopt);
    CHECK(f["edp"] == false);
    CHECK(f["B"].is_null());
    CHECK_FALSE(f["diagnostics"].empty());
}

TEST_CASE("reports are deterministic") {
    Problem p = load(entry("example_a"));
    Classification a = classify(to_pcnf(p.sentence()), p.vocabulary);
    Classification b = classify(to_pcnf(p.sentence()), p.vocabulary);
    CHECK(dump(classify_report(a, edp_bound(a))) == dump(classify_report(b, edp_bound(b))));
}

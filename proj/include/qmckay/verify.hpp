#pragma once

#include <string>

#include "qmckay/bundle_io.hpp"
#include "qmckay/potential.hpp"

namespace qmckay {

// End-to-end result of the correspondence check. status == pass iff the
// final diff is empty and no pipeline stage errored; when a stage throws,
// stage/message record where and why.
struct VerificationReport {
    enum class Status { pass, fail, error };

    // inputs echo
    std::string source_name;
    std::string target_name;
    Rational framing_hat;
    long long m0_max = 0;
    int jobs = 1;

    // derived data (valid once `derived` is set)
    bool derived = false;
    TransitionMatrix transition;
    FramingRelation relation;
    Rational framing; // relation applied to framing_hat
    ChangeOfVariables cov;
    Int s1 = 1;

    // counts
    long long admissible_source = 0;
    long long admissible_target = 0;
    long long source_terms = 0;
    long long target_terms = 0;
    long long matched_terms = 0;
    long long collisions = 0;

    DiffReport diff;

    Status status = Status::error;
    std::string stage;
    std::string message;

    bool pass() const { return status == Status::pass; }
};

// solve_transition -> framing relation -> change_of_variables ->
// index_correspondence -> determine_s1 -> build both -> substitute ->
// scale -> compare. Upstream errors are captured with their stage.
VerificationReport verify_correspondence(const GeometryBundle& source,
                                         const GeometryBundle& target,
                                         const Rational& framing_hat, long long m0_max,
                                         int jobs = 1);

// JSON form of the report; diff_cap limits how many diff entries are
// emitted (the total counts are always present). Stable field order, so a
// parse/dump round trip is byte-identical.
Json report_to_json(const VerificationReport& report,
                    std::size_t diff_cap = std::string::npos);

} // namespace qmckay

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gk/group.hpp"

namespace gk {

enum class Tri { yes, no, unknown };

// Ground-field model: only the predicates the rule base consumes.
struct FieldModel {
    std::string name;
    std::string kind;  // "Q" | "Qzeta" | "C" | "Fq" | "CharP"
    long long characteristic = 0;
    long long level = 1;  // normalized cyclotomic level (Qzeta), q (Fq), p (CharP)
    bool is_infinite = true;
    bool is_number_field = false;

    // does k contain a primitive n-th root of unity?
    Tri contains_zeta(long long n) const;
    // is k(zeta_{2^r}) a cyclic extension of k?
    Tri cyclic_cyclotomic_ext(int r) const;
};

// Specs: "Q", "C", "Qzeta:<m>", "Fq:<q>", "charp:<p>". Odd cyclotomic levels
// are normalized to their even double. Throws BadFieldSpec.
FieldModel builtin_field(const std::string& spec);

struct TraceStep {
    std::string rule;       // rule identifier, e.g. "R-AB"
    std::string statement;  // the sufficient condition the rule encodes
    std::vector<std::pair<std::string, std::string>> bindings;
};

struct Verdict {
    std::string outcome;  // "RetractRational" | "NotRetractRational" | "Unknown"
    std::vector<TraceStep> trace;
    std::vector<std::string> corollaries;
    // for Unknown: which rules were tried and the first premise that failed
    std::vector<std::pair<std::string, std::string>> attempts;
};

// Decides retract rationality of the invariant field k(G) by forward-chaining
// the rule base; Unknown when no sufficient condition applies. Throws
// FieldNotInfinite for finite ground fields.
Verdict certify(const Group& g, const FieldModel& k, int cap = Group::kDefaultCap);

std::string explain(const Verdict& v);

}  // namespace gk

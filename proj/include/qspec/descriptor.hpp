#pragma once

#include "qspec/scheme.hpp"

namespace qspec {

// Shorthand grammar: zmod:n | gf:q | poly:gf:q:<var>. Scheme shorthand:
// p1:q | affine:<ring> | empty | disj:<scheme>;<scheme>.
RingPtr parseRingDescriptor(const std::string& s);
FiniteRingPtr parseFiniteRingDescriptor(const std::string& s);
SchemePtr parseSchemeDescriptor(const std::string& s);

// Module shorthand over a finite ring: terms joined by '+', each term one of
// "free:n", "R", "R/(g1,g2,...)" with integer generators, or "Z/k" as an
// alias for R/(k).
FinModPtr parseModuleDescriptor(const FiniteRingPtr& R, const std::string& s);

// Canonical JSON for a precedence verdict, and the reverse direction used
// by --replay: rebuild the evidence and re-verify it independently.
std::string verdictToJson(const PrecedesVerdict& v, const FinModPtr& M, const FinModPtr& N);
bool replayVerdictJson(const std::string& json, const FinModPtr& M, const FinModPtr& N);

}  // namespace qspec

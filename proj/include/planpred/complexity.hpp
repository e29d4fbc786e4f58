#pragma once

#include "planpred/inference.hpp"

namespace planpred {

// The three stimulus-difficulty knobs of a task:
//   k - how many part types each candidate product needs,
//   n - how many of those types the agent has already collected,
//   c - the widest color choice left open: over every required-but-not-yet-
//       collected type, the max number of distinct colors on the grid.
struct ComplexitySignature {
    int k = 2;
    int n = 0;
    int c = 1;

    friend bool operator==(const ComplexitySignature&, const ComplexitySignature&) = default;
};

// Throws DomainError("heterogeneous candidates") when candidates disagree on
// type count, and DomainError when nothing is left to collect.
ComplexitySignature complexity_signature(const Task& task);

}  // namespace planpred

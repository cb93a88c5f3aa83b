#pragma once

#include "cfa/scoring.hpp"

#include <iosfwd>
#include <span>

namespace cfa {

enum class StrengthKind { diversity, performance };

// Per-system fusion weights: diversity strengths ds(A_j) computed here, or
// caller-supplied performance strengths p(A_j).
struct StrengthVector {
    StrengthKind kind = StrengthKind::diversity;
    std::vector<double> values;
};

// All pairwise cognitive diversities; symmetric with zero diagonal.
struct DiversityMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> values;

    std::size_t size() const noexcept { return values.size(); }
    double at(std::size_t j, std::size_t k) const { return values[j][k]; }

    // Header row and column of labels, cells with 9 significant digits.
    void write_csv(std::ostream& out) const;
};

// Root-mean-square distance between the two systems' RSC functions.
// Rejects systems over different item sets.
double cognitive_diversity(const ScoringSystem& a, const ScoringSystem& b);

// Average cognitive diversity between system j and every other system.
// Needs at least two systems.
double diversity_strength(std::span<const ScoringSystem> systems, std::size_t j);

DiversityMatrix diversity_matrix(std::span<const ScoringSystem> systems);

// All t diversity strengths from one pairwise matrix.
StrengthVector diversity_strengths(std::span<const ScoringSystem> systems);

// Strengths of `members` computed over the subgroup only, reusing a
// precomputed full pairwise matrix.
StrengthVector diversity_strengths_within(const DiversityMatrix& matrix,
                                          std::span<const std::size_t> members);

} // namespace cfa

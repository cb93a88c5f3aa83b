#include "cfa/diversity.hpp"

#include "cfa/csv.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace cfa {

namespace {

double rms_distance(const RSCFunction& a, const RSCFunction& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        double diff = a.values[i] - b.values[i];
        sum += diff * diff;
    }
    return std::sqrt(sum / static_cast<double>(a.values.size()));
}

void require_at_least_two(std::size_t count) {
    if (count < 2) {
        throw std::invalid_argument("diversity needs at least two scoring systems, got " +
                                    std::to_string(count));
    }
}

} // namespace

void DiversityMatrix::write_csv(std::ostream& out) const {
    std::vector<std::string> row;
    row.reserve(labels.size() + 1);
    row.push_back("label");
    row.insert(row.end(), labels.begin(), labels.end());
    out << csv::join_line(row) << '\n';
    for (std::size_t j = 0; j < values.size(); ++j) {
        row.clear();
        row.push_back(labels[j]);
        for (double v : values[j]) {
            row.push_back(csv::format_sig(v, 9));
        }
        out << csv::join_line(row) << '\n';
    }
}

double cognitive_diversity(const ScoringSystem& a, const ScoringSystem& b) {
    if (!same_item_set(a, b)) {
        throw std::invalid_argument("cognitive_diversity: systems '" + a.label() + "' and '" +
                                    b.label() + "' score different item sets");
    }
    return rms_distance(rsc_function(a), rsc_function(b));
}

double diversity_strength(std::span<const ScoringSystem> systems, std::size_t j) {
    require_at_least_two(systems.size());
    if (j >= systems.size()) {
        throw std::invalid_argument("diversity_strength: system index " + std::to_string(j) +
                                    " out of range");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < systems.size(); ++k) {
        if (k != j) {
            sum += cognitive_diversity(systems[j], systems[k]);
        }
    }
    return sum / static_cast<double>(systems.size() - 1);
}

DiversityMatrix diversity_matrix(std::span<const ScoringSystem> systems) {
    require_at_least_two(systems.size());
    std::size_t t = systems.size();

    std::vector<RSCFunction> rscs;
    rscs.reserve(t);
    for (const auto& system : systems) {
        if (!same_item_set(systems.front(), system)) {
            throw std::invalid_argument("diversity_matrix: systems '" + systems.front().label() +
                                        "' and '" + system.label() +
                                        "' score different item sets");
        }
        rscs.push_back(rsc_function(system));
    }

    DiversityMatrix matrix;
    matrix.labels.reserve(t);
    for (const auto& system : systems) {
        matrix.labels.push_back(system.label());
    }
    matrix.values.assign(t, std::vector<double>(t, 0.0));
    for (std::size_t j = 0; j < t; ++j) {
        for (std::size_t k = j + 1; k < t; ++k) {
            double cd = rms_distance(rscs[j], rscs[k]);
            matrix.values[j][k] = cd;
            matrix.values[k][j] = cd;
        }
    }
    return matrix;
}

StrengthVector diversity_strengths(std::span<const ScoringSystem> systems) {
    DiversityMatrix matrix = diversity_matrix(systems);
    StrengthVector strengths;
    strengths.kind = StrengthKind::diversity;
    strengths.values.reserve(matrix.size());
    for (std::size_t j = 0; j < matrix.size(); ++j) {
        double sum = 0.0;
        for (std::size_t k = 0; k < matrix.size(); ++k) {
            sum += matrix.values[j][k];
        }
        strengths.values.push_back(sum / static_cast<double>(matrix.size() - 1));
    }
    return strengths;
}

StrengthVector diversity_strengths_within(const DiversityMatrix& matrix,
                                          std::span<const std::size_t> members) {
    require_at_least_two(members.size());
    for (std::size_t m : members) {
        if (m >= matrix.size()) {
            throw std::invalid_argument("diversity_strengths_within: member index " +
                                        std::to_string(m) + " out of range");
        }
    }
    StrengthVector strengths;
    strengths.kind = StrengthKind::diversity;
    strengths.values.reserve(members.size());
    for (std::size_t j : members) {
        double sum = 0.0;
        for (std::size_t k : members) {
            if (k != j) {
                sum += matrix.values[j][k];
            }
        }
        strengths.values.push_back(sum / static_cast<double>(members.size() - 1));
    }
    return strengths;
}

} // namespace cfa

#pragma once

#include "cfa/scoring.hpp"
#include "cfa/warnings.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

namespace cfa::test {

// Builds systems over one shared item set so combination preconditions hold.
class SystemFactory {
public:
    explicit SystemFactory(std::size_t n) : items_(std::make_shared<ItemSet>(n)) {}

    ScoringSystem make(std::vector<double> scores, std::string label) const {
        return ScoringSystem(items_, std::move(scores), std::move(label));
    }

    const ItemSetPtr& items() const { return items_; }

private:
    ItemSetPtr items_;
};

// Captures warnings for the lifetime of the object.
class WarningCapture {
public:
    WarningCapture() {
        previous_ = set_warning_handler(
            [this](const std::string& message) { messages_.push_back(message); });
    }
    ~WarningCapture() { set_warning_handler(previous_); }

    const std::vector<std::string>& messages() const { return messages_; }
    bool contains(const std::string& needle) const {
        for (const auto& m : messages_) {
            if (m.find(needle) != std::string::npos) {
                return true;
            }
        }
        return false;
    }

private:
    WarningHandler previous_;
    std::vector<std::string> messages_;
};

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("cfa_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }

    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

inline std::vector<double> random_scores(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> scores(n);
    for (double& s : scores) {
        s = dist(rng);
    }
    return scores;
}

// Independent O(n^2) rank derivation: 1 + items strictly better + earlier
// equal items. Used as an oracle against rank_from_scores.
inline std::vector<std::size_t> oracle_ranks(const std::vector<double>& scores) {
    std::vector<std::size_t> ranks(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        std::size_t rank = 1;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (scores[j] > scores[i] || (scores[j] == scores[i] && j < i)) {
                ++rank;
            }
        }
        ranks[i] = rank;
    }
    return ranks;
}

// Independent RSC derivation through the oracle ranks.
inline std::vector<double> oracle_rsc(const std::vector<double>& scores) {
    auto ranks = oracle_ranks(scores);
    std::vector<double> rsc(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        rsc[ranks[i] - 1] = scores[i];
    }
    return rsc;
}

} // namespace cfa::test

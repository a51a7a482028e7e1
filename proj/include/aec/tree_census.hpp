#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "aec/rational.hpp"

namespace aec {

// Rooted unlabeled unordered tree; children order is irrelevant, the encoding
// sorts them. Valid class members have 0 or an even number >= 4 of children.
struct CanonicalTree {
    std::vector<CanonicalTree> children;

    int size() const {
        int n = 1;
        for (const auto& ch : children) n += ch.size();
        return n;
    }

    bool class_valid() const {
        std::size_t d = children.size();
        if (d != 0 && (d < 4 || d % 2 != 0)) return false;
        for (const auto& ch : children)
            if (!ch.class_valid()) return false;
        return true;
    }

    std::string encoding() const {
        std::vector<std::string> parts;
        parts.reserve(children.size());
        for (const auto& ch : children) parts.push_back(ch.encoding());
        std::sort(parts.begin(), parts.end());
        std::string out = "(";
        for (const auto& p : parts) out += p;
        out += ")";
        return out;
    }
};

// Exhaustive enumeration of the tree class, kept deliberately independent of
// the generating-function recurrences: a tree is a root plus a multiset of
// smaller trees, and multisets are listed by choosing subtrees in
// non-increasing (size, encoding-index) order.
class TreeCensus {
public:
    explicit TreeCensus(int limit = 25) : limit_(limit), memo_(limit + 1) {}

    int limit() const { return limit_; }

    const std::vector<std::string>& trees(int n) {
        if (n < 1 || n > limit_)
            throw std::out_of_range("node count outside 1.." + std::to_string(limit_));
        if (!memo_[n].has_value()) build(n);
        return *memo_[n];
    }

    long count_trees(int n) { return static_cast<long>(trees(n).size()); }

    // Multisets of exactly t trees from the class totaling n nodes. Uses only
    // the per-size tree counts and multiset coefficients.
    Integer count_forests(int n, int t) {
        if (t < 1 || n < t) throw std::invalid_argument("need n >= t >= 1");
        if (n > limit_) throw std::out_of_range("node count beyond limit");
        std::map<std::tuple<int, int, int>, Integer> cache;
        auto rec = [&](auto&& self, int nodes, int parts, int max_size) -> Integer {
            if (parts == 0) return nodes == 0 ? 1 : 0;
            if (nodes < parts || max_size == 0) return 0;
            auto key = std::make_tuple(nodes, parts, max_size);
            if (auto it = cache.find(key); it != cache.end()) return it->second;
            Integer total = 0;
            long avail = count_trees_small(max_size);
            for (int j = 0; j <= parts && j * max_size <= nodes; ++j) {
                if (j > 0 && avail == 0) break;
                total += multiset_coefficient(avail, j) *
                         self(self, nodes - j * max_size, parts - j, max_size - 1);
            }
            cache[key] = total;
            return total;
        };
        return rec(rec, n, t, n);
    }

    // (n, t_n^(1/n)) over odd n.
    std::vector<std::pair<int, double>> growth_estimate(int max_n) {
        if (max_n > limit_) throw std::out_of_range("node count beyond limit");
        std::vector<std::pair<int, double>> out;
        for (int n = 1; n <= max_n; n += 2) {
            double t = static_cast<double>(count_trees(n));
            out.emplace_back(n, t == 0 ? 0.0 : std::pow(t, 1.0 / n));
        }
        return out;
    }

private:
    long count_trees_small(int n) { return n < 1 ? 0 : count_trees(n); }

    static Integer multiset_coefficient(long types, int picks) {
        if (picks == 0) return 1;
        if (types == 0) return 0;
        // C(types + picks - 1, picks)
        Integer num = 1, den = 1;
        for (int i = 0; i < picks; ++i) {
            num *= types + i;
            den *= i + 1;
        }
        return num / den;
    }

    void build(int n) {
        std::vector<std::string> out;
        if (n == 1) {
            out.push_back("()");
        } else if (n % 2 == 1) {
            // root with d subtrees totaling n-1 nodes, d even >= 4
            for (int d = 4; d <= n - 1; d += 2) {
                std::vector<std::pair<int, int>> chosen; // (size, index)
                auto gen = [&](auto&& self, int nodes, int parts, int max_size,
                               int max_index) -> void {
                    if (parts == 0) {
                        if (nodes != 0) return;
                        // the (size, index) choice order fixes uniqueness; the
                        // encoding itself sorts children lexicographically
                        std::vector<std::string> encs;
                        encs.reserve(chosen.size());
                        for (auto& [sz, idx] : chosen)
                            encs.push_back(trees(sz)[static_cast<std::size_t>(idx)]);
                        std::sort(encs.begin(), encs.end());
                        std::string enc = "(";
                        for (const auto& p : encs) enc += p;
                        enc += ")";
                        out.push_back(enc);
                        return;
                    }
                    int top = std::min(max_size, nodes - (parts - 1));
                    for (int s = top; s >= 1; --s) {
                        const auto& pool = trees(s);
                        int start = (s == max_size)
                                        ? std::min<int>(max_index, static_cast<int>(pool.size()) - 1)
                                        : static_cast<int>(pool.size()) - 1;
                        for (int i = start; i >= 0; --i) {
                            chosen.emplace_back(s, i);
                            self(self, nodes - s, parts - 1, s, i);
                            chosen.pop_back();
                        }
                    }
                };
                gen(gen, n - 1, d, n - 1, INT32_MAX);
            }
            std::sort(out.begin(), out.end());
        }
        memo_[n] = std::move(out);
    }

    int limit_;
    std::vector<std::optional<std::vector<std::string>>> memo_;
};

} // namespace aec

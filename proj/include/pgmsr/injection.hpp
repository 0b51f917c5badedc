/**************************************************************************
 * injection.hpp
 *
 * Copyright 2026 The pgmsr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pgmsr {

/// p_i(j) for parity i in [0, r) and instance j in [0, s): the piggyback
/// that carries parity cell (i, j). Column s-1 maps every parity to itself.
/// All indices are 0-based.
class InjectionTable {
public:
    InjectionTable() = default;

    InjectionTable(std::size_t r, std::size_t s, std::vector<std::size_t> entries)
        : r_(r), s_(s), p_(std::move(entries))
    {
        if (s_ < 2 || s_ > r_) {
            throw std::invalid_argument("injection table: need 2 <= s <= r");
        }
        if (p_.size() != r_ * s_) {
            throw std::invalid_argument("injection table: expected r*s entries");
        }
        for (auto v : p_) {
            if (v >= r_) {
                throw std::invalid_argument("injection table: entry out of range");
            }
        }
    }

    /// Slope-1 diagonals: p_i(j) = (i - j + s - 1) mod r.
    static InjectionTable main_diagonal(std::size_t r, std::size_t s)
    {
        return generate(r, s, [r, s](std::size_t i, std::size_t j) { return (i + s - 1 + r - j) % r; });
    }

    /// Slope -1 diagonals: p_i(j) = (i + j - s + 1) mod r, least nonnegative residue.
    static InjectionTable anti_diagonal(std::size_t r, std::size_t s)
    {
        return generate(r, s, [r, s](std::size_t i, std::size_t j) { return (i + j + 1 + r - s) % r; });
    }

    /// From rows of 1-based entries, as found in config files.
    static InjectionTable from_one_based(const std::vector<std::vector<std::size_t>>& rows)
    {
        if (rows.empty()) {
            throw std::invalid_argument("injection table: no rows");
        }
        const std::size_t s = rows.front().size();
        std::vector<std::size_t> entries;
        for (const auto& row : rows) {
            if (row.size() != s) {
                throw std::invalid_argument("injection table: ragged rows");
            }
            for (auto v : row) {
                if (v == 0) {
                    throw std::invalid_argument("injection table: entries are 1-based");
                }
                entries.push_back(v - 1);
            }
        }
        return InjectionTable(rows.size(), s, std::move(entries));
    }

    std::vector<std::vector<std::size_t>> to_one_based() const
    {
        std::vector<std::vector<std::size_t>> rows(r_);
        for (std::size_t i = 0; i < r_; ++i) {
            for (std::size_t j = 0; j < s_; ++j) {
                rows[i].push_back(at(i, j) + 1);
            }
        }
        return rows;
    }

    std::size_t r() const noexcept { return r_; }
    std::size_t s() const noexcept { return s_; }
    std::size_t at(std::size_t parity, std::size_t instance) const { return p_.at(parity * s_ + instance); }

    friend bool operator==(const InjectionTable&, const InjectionTable&) = default;

private:
    template <typename F>
    static InjectionTable generate(std::size_t r, std::size_t s, F f)
    {
        if (s < 2 || s > r) {
            throw std::invalid_argument("injection table: need 2 <= s <= r");
        }
        std::vector<std::size_t> entries;
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < s; ++j) {
                entries.push_back(f(i, j));
            }
        }
        return InjectionTable(r, s, std::move(entries));
    }

    std::size_t r_ = 0;
    std::size_t s_ = 0;
    std::vector<std::size_t> p_;
};

enum class InjectionViolation {
    NotInjective,       // p_i repeats a piggyback
    LastNotSelf,        // p_i(s) != i
    SelfColumnNonzero,  // p_i(j) == i for some j < s
    UnbalancedSupport,  // some |S_l| != s - 1
};

inline std::string_view violation_name(InjectionViolation v)
{
    switch (v) {
    case InjectionViolation::NotInjective:
        return "not injective";
    case InjectionViolation::LastNotSelf:
        return "last instance not mapped to itself";
    case InjectionViolation::SelfColumnNonzero:
        return "self-column nonzero";
    case InjectionViolation::UnbalancedSupport:
        return "unbalanced support";
    }
    return "unknown";
}

struct InjectionFinding {
    InjectionViolation violation;
    std::size_t index = 0;  // parity row, or piggyback index for support findings
};

struct ValidationReport {
    std::vector<InjectionFinding> findings;
    std::vector<std::size_t> support_sizes;

    /// Repairable: every structural rule holds; supports may be uneven.
    bool valid() const
    {
        return std::none_of(findings.begin(), findings.end(),
                            [](const auto& f) { return f.violation != InjectionViolation::UnbalancedSupport; });
    }
    /// Valid and minimizes average parity repair bandwidth.
    bool optimal() const { return findings.empty(); }

    bool has(InjectionViolation v) const
    {
        return std::any_of(findings.begin(), findings.end(), [v](const auto& f) { return f.violation == v; });
    }
};

inline ValidationReport validate_injection(const InjectionTable& t)
{
    ValidationReport rep;
    const std::size_t r = t.r();
    const std::size_t s = t.s();
    rep.support_sizes.assign(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<bool> used(r, false);
        bool injective = true;
        bool self_hit = false;
        for (std::size_t j = 0; j < s; ++j) {
            const auto l = t.at(i, j);
            injective = injective && !used[l];
            used[l] = true;
            if (j + 1 < s) {
                self_hit = self_hit || l == i;
                ++rep.support_sizes[l];
            }
        }
        if (!injective) {
            rep.findings.push_back({InjectionViolation::NotInjective, i});
        }
        if (t.at(i, s - 1) != i) {
            rep.findings.push_back({InjectionViolation::LastNotSelf, i});
        }
        if (self_hit) {
            rep.findings.push_back({InjectionViolation::SelfColumnNonzero, i});
        }
    }
    for (std::size_t l = 0; l < r; ++l) {
        if (rep.support_sizes[l] != s - 1) {
            rep.findings.push_back({InjectionViolation::UnbalancedSupport, l});
        }
    }
    return rep;
}

/// (parity, instance) pairs summed into piggyback `index`, sorted.
struct PiggybackSupport {
    std::size_t index = 0;
    std::vector<std::pair<std::size_t, std::size_t>> members;

    friend bool operator==(const PiggybackSupport&, const PiggybackSupport&) = default;
};

/// S_l = {(i, j) : p_i(j) = l, j < s-1}. Requires a valid table.
inline std::vector<PiggybackSupport> piggyback_supports(const InjectionTable& t)
{
    if (!validate_injection(t).valid()) {
        throw std::invalid_argument("piggyback supports: injection table is not valid");
    }
    std::vector<PiggybackSupport> out(t.r());
    for (std::size_t l = 0; l < t.r(); ++l) {
        out[l].index = l;
    }
    for (std::size_t i = 0; i < t.r(); ++i) {
        for (std::size_t j = 0; j + 1 < t.s(); ++j) {
            out[t.at(i, j)].members.emplace_back(i, j);
        }
    }
    for (auto& sup : out) {
        std::sort(sup.members.begin(), sup.members.end());
    }
    return out;
}

/// Calls f on every valid table for (r, s): each row an injection of the
/// first s-1 instances into the other r-1 parities. There are
/// ((r-1)!/(r-s)!)^r of them.
inline void for_each_valid_table(std::size_t r, std::size_t s, const std::function<void(const InjectionTable&)>& f)
{
    if (s < 2 || s > r) {
        throw std::invalid_argument("injection table: need 2 <= s <= r");
    }
    std::vector<std::vector<std::size_t>> row_choices(r);
    std::vector<std::vector<std::vector<std::size_t>>> options(r);
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<std::size_t> others;
        for (std::size_t l = 0; l < r; ++l) {
            if (l != i) {
                others.push_back(l);
            }
        }
        // ordered selections of s-1 distinct elements from `others`
        std::vector<std::size_t> pick;
        std::vector<bool> taken(others.size(), false);
        std::function<void()> rec = [&]() {
            if (pick.size() + 1 == s) {
                auto row = pick;
                row.push_back(i);
                options[i].push_back(std::move(row));
                return;
            }
            for (std::size_t c = 0; c < others.size(); ++c) {
                if (!taken[c]) {
                    taken[c] = true;
                    pick.push_back(others[c]);
                    rec();
                    pick.pop_back();
                    taken[c] = false;
                }
            }
        };
        rec();
    }
    std::vector<std::size_t> idx(r, 0);
    for (;;) {
        std::vector<std::size_t> entries;
        for (std::size_t i = 0; i < r; ++i) {
            const auto& row = options[i][idx[i]];
            entries.insert(entries.end(), row.begin(), row.end());
        }
        f(InjectionTable(r, s, std::move(entries)));
        std::size_t i = 0;
        while (i < r && ++idx[i] == options[i].size()) {
            idx[i] = 0;
            ++i;
        }
        if (i == r) {
            return;
        }
    }
}

} // namespace pgmsr

/**************************************************************************
 * bandwidth.hpp
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

#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <boost/rational.hpp>

namespace pgmsr {

/// Exact rational; all analytic bandwidths are carried as multiples of a
/// per-node size (alpha or alpha') with this type.
using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& q)
{
    std::ostringstream os;
    os << q.numerator();
    if (q.denominator() != 1) {
        os << '/' << q.denominator();
    }
    return os.str();
}

/// What a helper transfer was for. Every metered read is tagged.
enum class Phase {
    SelectorRows,        // S_i rows of a cell, systematic repair
    InstanceSystematic,  // full last-instance systematic cell, parity repair step 1
    PiggybackedCell,     // last-instance parity cell carrying a piggyback, step 2
    SupportMember,       // earlier-instance parity cell named by a piggyback support
};

inline std::string_view phase_name(Phase p)
{
    switch (p) {
    case Phase::SelectorRows:
        return "selector-rows";
    case Phase::InstanceSystematic:
        return "instance-systematic";
    case Phase::PiggybackedCell:
        return "piggybacked-cell";
    case Phase::SupportMember:
        return "support-member";
    }
    return "unknown";
}

struct TransferEntry {
    std::size_t helper = 0;
    std::size_t symbols = 0;
    Phase phase = Phase::SelectorRows;
};

/// Symbol counts moved from helpers to the replacement of one failed node.
class TransferLedger {
public:
    TransferLedger() = default;
    explicit TransferLedger(std::size_t failed_node) : failed_node_(failed_node) {}

    std::size_t failed_node() const noexcept { return failed_node_; }
    const std::vector<TransferEntry>& entries() const noexcept { return entries_; }

    void record(std::size_t helper, std::size_t symbols, Phase phase)
    {
        if (helper == failed_node_) {
            throw std::logic_error("ledger: the failed node cannot act as a helper");
        }
        entries_.push_back({helper, symbols, phase});
    }

    /// Appends every entry of other; both ledgers must describe the same failure.
    void merge(const TransferLedger& other)
    {
        if (other.failed_node_ != failed_node_) {
            throw std::invalid_argument("ledger: merging ledgers of different failures");
        }
        entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
    }

    std::size_t total() const noexcept
    {
        std::size_t t = 0;
        for (const auto& e : entries_) {
            t += e.symbols;
        }
        return t;
    }

    std::map<std::size_t, std::size_t> per_helper() const
    {
        std::map<std::size_t, std::size_t> m;
        for (const auto& e : entries_) {
            m[e.helper] += e.symbols;
        }
        return m;
    }

    /// Totals grouped by (helper, phase), ordered by helper id then phase.
    std::map<std::pair<std::size_t, Phase>, std::size_t> per_helper_phase() const
    {
        std::map<std::pair<std::size_t, Phase>, std::size_t> m;
        for (const auto& e : entries_) {
            m[{e.helper, e.phase}] += e.symbols;
        }
        return m;
    }

private:
    std::size_t failed_node_ = 0;
    std::vector<TransferEntry> entries_;
};

/// CSV with header failed_node,helper,phase,symbols. Node ids are written
/// 1-based; rows are aggregated per (helper, phase) and sorted by helper.
inline void write_ledger_csv(std::ostream& os, const TransferLedger& ledger, bool header = true)
{
    if (header) {
        os << "failed_node,helper,phase,symbols\n";
    }
    for (const auto& [key, symbols] : ledger.per_helper_phase()) {
        os << ledger.failed_node() + 1 << ',' << key.first + 1 << ',' << phase_name(key.second) << ','
           << symbols << '\n';
    }
}

struct BandwidthReport {
    std::size_t total = 0;
    std::map<std::size_t, std::size_t> per_helper;
    Rational expected;  // symbols
    bool match = false;
};

/// Exact comparison of a finished ledger against an expected symbol count.
inline BandwidthReport assert_measured(const TransferLedger& ledger, Rational expected_symbols)
{
    BandwidthReport report;
    report.total = ledger.total();
    report.per_helper = ledger.per_helper();
    report.expected = expected_symbols;
    report.match = expected_symbols.denominator() == 1 &&
                   expected_symbols.numerator() == static_cast<std::int64_t>(report.total);
    return report;
}

/// Repair bandwidths of the s-piggybacked code, as multiples of its
/// per-node size alpha = s * alpha'.
struct AnalyticBandwidth {
    Rational gamma_system;
    Rational gamma_parity;
    Rational gamma_msr_bound;
};

inline AnalyticBandwidth analytic_bandwidth(std::int64_t k, std::int64_t r, std::int64_t s)
{
    if (s < 2 || s > r || r > k) {
        throw std::invalid_argument("analytic_bandwidth: need 2 <= s <= r <= k");
    }
    const Rational bound(k + r - 1, r);
    return {bound, Rational(k + s * (s - 1), s), bound};
}

/// Average parity repair of the two-instance single-piggyback design and of
/// its modified variant, both as multiples of alpha = 2 alpha'.
struct LegacyBandwidth {
    Rational single_piggyback;
    Rational modified;
};

inline LegacyBandwidth legacy_average_parity_bandwidth(std::int64_t k, std::int64_t r)
{
    if (r < 2 || k < 1) {
        throw std::invalid_argument("legacy bandwidth: need r >= 2 and k >= 1");
    }
    const Rational eq2(2 * k + (r - 1) * (k + r - 1), 2 * r);
    // ((k+r+1) + (r-1)(k+r-1)) alpha' / r with alpha' = alpha / 2
    const Rational modified((k + r + 1) + (r - 1) * (k + r - 1), 2 * r);
    return {eq2, modified};
}

/// Parity repair of the (k+2,k) Hadamard MSR code, for reference columns.
inline Rational hadamard_parity_reference(std::int64_t k)
{
    return Rational(k + 1, 2);
}

struct ComparisonRow {
    std::int64_t k = 0;
    std::int64_t r = 0;
    Rational msr_bound;
    Rational new_system;
    Rational new_parity;
    Rational legacy_single;
    Rational legacy_modified;
};

/// One row per k for the r-piggybacked design (s = r); every value is a
/// multiple of the per-node size of the respective code.
inline std::vector<ComparisonRow> compare_table(const std::vector<std::int64_t>& k_list, std::int64_t r)
{
    std::vector<ComparisonRow> rows;
    rows.reserve(k_list.size());
    for (auto k : k_list) {
        const auto a = analytic_bandwidth(k, r, r);
        const auto l = legacy_average_parity_bandwidth(k, r);
        rows.push_back({k, r, a.gamma_msr_bound, a.gamma_system, a.gamma_parity, l.single_piggyback, l.modified});
    }
    return rows;
}

} // namespace pgmsr

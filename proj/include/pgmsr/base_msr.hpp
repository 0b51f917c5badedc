/**************************************************************************
 * base_msr.hpp
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
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pgmsr/gf.hpp"
#include "pgmsr/matrix.hpp"

namespace pgmsr {

/// Parameters of the (k+r, k) base code. Node ids are 0-based throughout
/// the library: systematic nodes are 0..k-1, parity node j is k+j.
struct BaseParams {
    std::size_t k = 0;
    std::size_t r = 0;
    std::uint64_t seed = 0;

    void validate() const
    {
        if (k < 2 || r < 2 || r > k) {
            throw std::invalid_argument("base code: need k >= 2 and 2 <= r <= k");
        }
        // alpha' = r^k must stay addressable with 32-bit permutation entries
        std::uint64_t a = 1;
        for (std::size_t i = 0; i < k; ++i) {
            a *= r;
            if (a > (std::uint64_t{1} << 31)) {
                throw std::invalid_argument("base code: r^k too large");
            }
        }
    }
};

struct BuildOptions {
    /// Exhaustive MDS verification; costs grow like r^(2r) per subset, so
    /// callers that only exercise repair at large k may turn it off.
    bool verify_mds = true;
    unsigned max_attempts = 16;
};

/// The rows {v : digit_i(v) = 0} requested from every helper when
/// systematic node i is repaired.
struct RepairSelector {
    std::size_t node = 0;
    std::vector<std::size_t> rows;
};

struct MdsReport {
    std::size_t subsets_checked = 0;
    bool all_invertible = true;
    std::vector<std::vector<std::size_t>> failures;
};

class MdsConstructionError : public std::runtime_error {
public:
    MdsConstructionError(std::vector<std::size_t> subset, const std::string& what)
        : std::runtime_error(what), subset_(std::move(subset))
    {}
    const std::vector<std::size_t>& failing_subset() const noexcept { return subset_; }

private:
    std::vector<std::size_t> subset_;
};

/// A node's data handed to a decoder.
template <unsigned W>
struct NodeView {
    std::size_t node = 0;
    std::span<const FieldElement<W>> data;
};

/// Symbol positions 0..r^k-1 read as base-r digit vectors of length k,
/// digit i (least significant first) belonging to systematic node i.
class DigitSpace {
public:
    DigitSpace() = default;
    DigitSpace(std::size_t r, std::size_t k) : r_(r), pow_(k + 1, 1)
    {
        for (std::size_t i = 1; i <= k; ++i) {
            pow_[i] = pow_[i - 1] * r;
        }
    }

    std::size_t radix() const noexcept { return r_; }
    std::size_t size() const noexcept { return pow_.back(); }
    std::size_t weight(std::size_t i) const { return pow_[i]; }
    std::size_t digit(std::size_t v, std::size_t i) const { return (v / pow_[i]) % r_; }

    /// v + amount * e_i, digit i taken mod r
    std::size_t shift(std::size_t v, std::size_t i, std::size_t amount) const
    {
        const auto d = digit(v, i);
        return v - d * pow_[i] + ((d + amount) % r_) * pow_[i];
    }
    std::size_t unshift(std::size_t v, std::size_t i, std::size_t amount) const
    {
        return shift(v, i, r_ - amount % r_);
    }

    /// Index of v among {u : digit_i(u) = 0}, listed in increasing order.
    std::size_t slot_without(std::size_t v, std::size_t i) const
    {
        return v % pow_[i] + (v / pow_[i + 1]) * pow_[i];
    }

private:
    std::size_t r_ = 0;
    std::vector<std::size_t> pow_;
};

template <unsigned W>
class BaseMsrCode;

namespace detail {

/// The erasure system of one node subset splits into independent blocks:
/// unknown f_e(v) for erased systematic e only couples to positions that
/// differ from v in erased digits. One block per assignment of the other
/// digits, each of size |E| * r^|E|.
template <unsigned W>
struct ErasureSystems {
    std::vector<std::size_t> erased;         // systematic ids, sorted
    std::vector<std::size_t> parities;       // parity node ids used, sorted
    std::vector<std::size_t> bases;          // first position of each block
    std::vector<std::size_t> local_offsets;  // block-local position -> offset
    std::vector<Matrix<W>> blocks;
};

template <unsigned W>
ErasureSystems<W> erasure_systems(const BaseMsrCode<W>& code, std::span<const std::size_t> nodes);

} // namespace detail

/// A systematic (k+r, k) MSR code with alpha' = r^k symbols per node.
///
/// Parity j (0-based) is f_{k+j} = sum_i A_{j,i} f_i where A_{j,i} moves
/// the symbol at position v to v + j e_i with a nonzero diagonal scale.
/// Parity 0 is therefore a scaled row parity. Repair of systematic node i
/// reads the positions with digit_i = 0 from every helper, a 1/r fraction.
template <unsigned W>
class BaseMsrCode {
public:
    static BaseMsrCode build(const BaseParams& params, const BuildOptions& options = {})
    {
        params.validate();
        if (options.max_attempts == 0) {
            throw std::invalid_argument("base code: max_attempts must be positive");
        }
        std::vector<std::size_t> last_failure;
        for (unsigned attempt = 0; attempt < options.max_attempts; ++attempt) {
            BaseMsrCode code(params, random_coding(params, params.seed + attempt));
            code.attempts_ = attempt + 1;
            if (!options.verify_mds) {
                return code;
            }
            auto report = code.verify_mds();
            if (report.all_invertible) {
                code.verified_mds_ = true;
                return code;
            }
            last_failure = report.failures.front();
        }
        std::string subset;
        for (auto n : last_failure) {
            subset += (subset.empty() ? "" : ",") + std::to_string(n + 1);
        }
        throw MdsConstructionError(last_failure, "base code: MDS verification failed after " +
                                                     std::to_string(options.max_attempts) +
                                                     " attempts; last failing node subset {" + subset + "}");
    }

    /// A code with caller-chosen coding matrices; permutations must follow
    /// the digit-shift rule. verified_mds() stays false until verify_mds()
    /// has been called and passed via mark_verified().
    static BaseMsrCode with_coding(const BaseParams& params, std::vector<PermDiagMatrix<W>> coding)
    {
        params.validate();
        BaseMsrCode code(params, std::move(coding));
        for (std::size_t j = 0; j < code.r(); ++j) {
            for (std::size_t i = 0; i < code.k(); ++i) {
                const auto& a = code.coding(j, i);
                if (a.dim() != code.alpha_prime()) {
                    throw std::invalid_argument("base code: coding matrix has wrong order");
                }
                for (std::size_t v = 0; v < a.dim(); ++v) {
                    if (a.perm()[v] != code.digits_.shift(v, i, j)) {
                        throw std::invalid_argument("base code: coding permutation breaks the digit-shift rule");
                    }
                }
            }
        }
        return code;
    }

    const BaseParams& params() const noexcept { return params_; }
    std::size_t k() const noexcept { return params_.k; }
    std::size_t r() const noexcept { return params_.r; }
    std::size_t n() const noexcept { return params_.k + params_.r; }
    std::size_t alpha_prime() const noexcept { return digits_.size(); }
    std::size_t selector_size() const noexcept { return alpha_prime() / r(); }
    bool verified_mds() const noexcept { return verified_mds_; }
    unsigned attempts() const noexcept { return attempts_; }
    const DigitSpace& digits() const noexcept { return digits_; }

    /// A_{j,i}, j a parity index in [0, r), i a systematic index in [0, k).
    const PermDiagMatrix<W>& coding(std::size_t j, std::size_t i) const { return coding_.at(j * k() + i); }

    bool is_systematic(std::size_t node) const noexcept { return node < k(); }

    RepairSelector repair_selector(std::size_t i) const
    {
        check_systematic(i);
        RepairSelector sel{i, {}};
        sel.rows.reserve(selector_size());
        for (std::size_t v = 0; v < alpha_prime(); ++v) {
            if (digits_.digit(v, i) == 0) {
                sel.rows.push_back(v);
            }
        }
        return sel;
    }

    /// The r parity cells of one codeword.
    std::vector<Symbols<W>> encode(std::span<const Symbols<W>> source) const
    {
        if (source.size() != k()) {
            throw std::invalid_argument("base encode: expected k source vectors");
        }
        std::vector<std::span<const FieldElement<W>>> views(source.begin(), source.end());
        return encode_views(views);
    }

    std::vector<Symbols<W>> encode_views(std::span<const std::span<const FieldElement<W>>> source) const
    {
        if (source.size() != k()) {
            throw std::invalid_argument("base encode: expected k source vectors");
        }
        for (const auto& f : source) {
            if (f.size() != alpha_prime()) {
                throw std::invalid_argument("base encode: source vector has wrong length");
            }
        }
        std::vector<Symbols<W>> parity(r(), Symbols<W>(alpha_prime()));
        for (std::size_t j = 0; j < r(); ++j) {
            for (std::size_t i = 0; i < k(); ++i) {
                coding(j, i).apply_add(source[i], parity[j]);
            }
        }
        return parity;
    }

    /// Rebuilds systematic node i from selector slices. slices[l] holds the
    /// selector rows of node l in increasing position order; slices[i] is
    /// ignored.
    Symbols<W> repair_systematic(std::size_t i, std::span<const Symbols<W>> slices) const
    {
        check_systematic(i);
        if (slices.size() != n()) {
            throw std::invalid_argument("base repair: expected one slice slot per node");
        }
        for (std::size_t l = 0; l < n(); ++l) {
            if (l != i && slices[l].size() != selector_size()) {
                throw std::invalid_argument("base repair: helper slice " + std::to_string(l + 1) +
                                            " missing or of wrong length");
            }
        }
        Symbols<W> out(alpha_prime());
        for (std::size_t j = 0; j < r(); ++j) {
            const auto& parity_slice = slices[k() + j];
            for (std::size_t u = 0; u < alpha_prime(); ++u) {
                if (digits_.digit(u, i) != 0) {
                    continue;
                }
                auto val = parity_slice[digits_.slot_without(u, i)];
                for (std::size_t l = 0; l < k(); ++l) {
                    if (l == i) {
                        continue;
                    }
                    const auto w = digits_.unshift(u, l, j);
                    val -= coding(j, l).scale()[w] * slices[l][digits_.slot_without(w, i)];
                }
                // the remaining term is scale * f_i(u - j e_i)
                const auto w = digits_.unshift(u, i, j);
                out[w] = val / coding(j, i).scale()[w];
            }
        }
        return out;
    }

    /// Source from any k nodes.
    std::vector<Symbols<W>> reconstruct(std::span<const NodeView<W>> nodes) const;

    /// Checks every k-subset holding at least one parity node.
    MdsReport verify_mds() const
    {
        MdsReport report;
        std::vector<std::size_t> subset(k());
        for (std::size_t i = 0; i < k(); ++i) {
            subset[i] = i;
        }
        for (;;) {
            if (subset.back() >= k()) {
                ++report.subsets_checked;
                auto sys = detail::erasure_systems(*this, subset);
                for (const auto& b : sys.blocks) {
                    if (!LuDecomposition<W>(b).invertible()) {
                        report.all_invertible = false;
                        report.failures.push_back(subset);
                        break;
                    }
                }
            }
            if (!next_combination(subset, n())) {
                break;
            }
        }
        return report;
    }

    void mark_verified()
    {
        verified_mds_ = verify_mds().all_invertible;
    }

    /// Advances a sorted combination of {0..n-1}; false after the last one.
    static bool next_combination(std::vector<std::size_t>& c, std::size_t n)
    {
        const std::size_t m = c.size();
        for (std::size_t i = m; i-- > 0;) {
            if (c[i] < n - m + i) {
                ++c[i];
                for (std::size_t j = i + 1; j < m; ++j) {
                    c[j] = c[j - 1] + 1;
                }
                return true;
            }
        }
        return false;
    }

private:
    BaseMsrCode(const BaseParams& params, std::vector<PermDiagMatrix<W>> coding)
        : params_(params), digits_(params.r, params.k), coding_(std::move(coding))
    {
        if (coding_.size() != params.r * params.k) {
            throw std::invalid_argument("base code: expected r*k coding matrices");
        }
    }

    static std::vector<PermDiagMatrix<W>> random_coding(const BaseParams& p, std::uint64_t seed)
    {
        const DigitSpace digits(p.r, p.k);
        const std::size_t a = digits.size();
        // raw engine output keeps the coefficients identical across standard libraries
        std::mt19937_64 rng(seed);
        constexpr std::uint64_t nonzero = GaloisTables<W>::group_order;
        std::vector<PermDiagMatrix<W>> coding;
        coding.reserve(p.r * p.k);
        for (std::size_t j = 0; j < p.r; ++j) {
            for (std::size_t i = 0; i < p.k; ++i) {
                std::vector<std::uint32_t> perm(a);
                Symbols<W> scale(a);
                for (std::size_t v = 0; v < a; ++v) {
                    perm[v] = static_cast<std::uint32_t>(digits.shift(v, i, j));
                    scale[v] = FieldElement<W>::from_uint(1 + rng() % nonzero);
                }
                coding.emplace_back(std::move(perm), std::move(scale));
            }
        }
        return coding;
    }

    void check_systematic(std::size_t i) const
    {
        if (i >= k()) {
            throw std::out_of_range("base code: node " + std::to_string(i + 1) + " is not systematic");
        }
    }

    BaseParams params_;
    DigitSpace digits_;
    std::vector<PermDiagMatrix<W>> coding_;
    bool verified_mds_ = false;
    unsigned attempts_ = 0;
};

namespace detail {

template <unsigned W>
ErasureSystems<W> erasure_systems(const BaseMsrCode<W>& code, std::span<const std::size_t> nodes)
{
    const std::size_t k = code.k();
    const std::size_t r = code.r();
    if (nodes.size() != k) {
        throw std::invalid_argument("decoder: exactly k nodes are required");
    }
    std::vector<bool> present(code.n(), false);
    for (auto node : nodes) {
        if (node >= code.n() || present[node]) {
            throw std::invalid_argument("decoder: node ids must be distinct and in range");
        }
        present[node] = true;
    }
    ErasureSystems<W> sys;
    for (std::size_t i = 0; i < k; ++i) {
        if (!present[i]) {
            sys.erased.push_back(i);
        }
    }
    for (std::size_t j = 0; j < r; ++j) {
        if (present[k + j]) {
            sys.parities.push_back(k + j);
        }
    }
    const std::size_t e = sys.erased.size();
    if (e == 0) {
        return sys;
    }
    const auto& digits = code.digits();
    std::size_t local = 1;
    for (std::size_t m = 0; m < e; ++m) {
        local *= r;
    }
    sys.local_offsets.resize(local);
    for (std::size_t t = 0; t < local; ++t) {
        std::size_t off = 0;
        std::size_t rest = t;
        for (std::size_t m = 0; m < e; ++m) {
            off += (rest % r) * digits.weight(sys.erased[m]);
            rest /= r;
        }
        sys.local_offsets[t] = off;
    }
    for (std::size_t v = 0; v < code.alpha_prime(); ++v) {
        bool base = true;
        for (auto i : sys.erased) {
            base = base && digits.digit(v, i) == 0;
        }
        if (base) {
            sys.bases.push_back(v);
        }
    }
    const std::size_t dim = e * local;
    sys.blocks.reserve(sys.bases.size());
    for (auto base : sys.bases) {
        Matrix<W> m(dim, dim);
        for (std::size_t q = 0; q < e; ++q) {
            const std::size_t j = sys.parities[q] - k;
            for (std::size_t u = 0; u < e; ++u) {
                const std::size_t i = sys.erased[u];
                std::size_t place = 1;
                for (std::size_t t = 0; t < u; ++t) {
                    place *= r;
                }
                const auto& a = code.coding(j, i);
                for (std::size_t t = 0; t < local; ++t) {
                    const std::size_t d = (t / place) % r;
                    const std::size_t t2 = t - d * place + ((d + j) % r) * place;
                    m(q * local + t2, u * local + t) = a.scale()[base + sys.local_offsets[t]];
                }
            }
        }
        sys.blocks.push_back(std::move(m));
    }
    return sys;
}

} // namespace detail

/// Factorized erasure system for one fixed set of k available nodes; reuse
/// it to decode any number of codewords stored on those nodes.
template <unsigned W>
class BaseDecoder {
public:
    BaseDecoder(const BaseMsrCode<W>& code, std::vector<std::size_t> nodes) : code_(&code), nodes_(std::move(nodes))
    {
        auto sys = detail::erasure_systems(code, nodes_);
        erased_ = std::move(sys.erased);
        parities_ = std::move(sys.parities);
        bases_ = std::move(sys.bases);
        offsets_ = std::move(sys.local_offsets);
        lu_.reserve(sys.blocks.size());
        for (auto& b : sys.blocks) {
            lu_.emplace_back(std::move(b));
            if (!lu_.back().invertible()) {
                throw SingularMatrixError(lu_.back().rank(), lu_.back().dim());
            }
        }
    }

    const std::vector<std::size_t>& nodes() const noexcept { return nodes_; }

    /// data[t] belongs to nodes()[t].
    std::vector<Symbols<W>> decode(std::span<const std::span<const FieldElement<W>>> data) const
    {
        const auto& code = *code_;
        const std::size_t k = code.k();
        const std::size_t a = code.alpha_prime();
        if (data.size() != nodes_.size()) {
            throw std::invalid_argument("decoder: one payload per selected node expected");
        }
        std::vector<Symbols<W>> source(k);
        std::vector<std::span<const FieldElement<W>>> parity(code.n());
        for (std::size_t t = 0; t < nodes_.size(); ++t) {
            if (data[t].size() != a) {
                throw std::invalid_argument("decoder: payload has wrong length");
            }
            if (nodes_[t] < k) {
                source[nodes_[t]].assign(data[t].begin(), data[t].end());
            } else {
                parity[nodes_[t]] = data[t];
            }
        }
        if (erased_.empty()) {
            return source;
        }
        const std::size_t e = erased_.size();
        // strip the known systematic contributions from each parity used
        std::vector<Symbols<W>> rhs(e);
        for (std::size_t q = 0; q < e; ++q) {
            const std::size_t j = parities_[q] - k;
            rhs[q].assign(parity[parities_[q]].begin(), parity[parities_[q]].end());
            for (std::size_t i = 0; i < k; ++i) {
                if (!source[i].empty()) {
                    code.coding(j, i).apply_add(source[i], rhs[q]);
                }
            }
        }
        for (auto i : erased_) {
            source[i].assign(a, FieldElement<W>{});
        }
        const std::size_t local = offsets_.size();
        Symbols<W> x(e * local);
        for (std::size_t b = 0; b < bases_.size(); ++b) {
            for (std::size_t q = 0; q < e; ++q) {
                for (std::size_t t = 0; t < local; ++t) {
                    x[q * local + t] = rhs[q][bases_[b] + offsets_[t]];
                }
            }
            lu_[b].solve_in_place(x);
            for (std::size_t u = 0; u < e; ++u) {
                for (std::size_t t = 0; t < local; ++t) {
                    source[erased_[u]][bases_[b] + offsets_[t]] = x[u * local + t];
                }
            }
        }
        return source;
    }

private:
    const BaseMsrCode<W>* code_;
    std::vector<std::size_t> nodes_;
    std::vector<std::size_t> erased_;
    std::vector<std::size_t> parities_;
    std::vector<std::size_t> bases_;
    std::vector<std::size_t> offsets_;
    std::vector<LuDecomposition<W>> lu_;
};

template <unsigned W>
std::vector<Symbols<W>> BaseMsrCode<W>::reconstruct(std::span<const NodeView<W>> nodes) const
{
    std::vector<std::size_t> ids;
    std::vector<std::span<const FieldElement<W>>> data;
    for (const auto& nv : nodes) {
        ids.push_back(nv.node);
        data.push_back(nv.data);
    }
    return BaseDecoder<W>(*this, std::move(ids)).decode(data);
}

} // namespace pgmsr

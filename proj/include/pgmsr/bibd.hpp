/**************************************************************************
 * bibd.hpp
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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pgmsr/bandwidth.hpp"

namespace pgmsr {

/// Block design on points 0..n-1; each block is a sorted set of
/// block_size points.
struct BibdDesign {
    std::size_t n = 0;
    std::size_t block_size = 0;
    std::size_t lambda = 0;
    std::vector<std::vector<std::size_t>> blocks;

    std::size_t b() const noexcept { return blocks.size(); }

    friend bool operator==(const BibdDesign&, const BibdDesign&) = default;
};

struct BibdReport {
    std::size_t e = 0;  // replication derived from (n, block_size, lambda)
    std::size_t b = 0;  // block count derived from (n, block_size, lambda)
    bool ok = false;
    std::vector<std::string> problems;
};

/// Brute-force incidence counts checked against the parameter identities
/// e = lambda (n-1) / (r-1) and b = lambda n (n-1) / (r (r-1)).
inline BibdReport validate_bibd(const BibdDesign& d)
{
    BibdReport rep;
    auto problem = [&rep](std::string msg) { rep.problems.push_back(std::move(msg)); };
    const std::size_t n = d.n;
    const std::size_t r = d.block_size;
    if (n < 2 || r < 2 || r > n || d.lambda == 0) {
        problem("need n >= 2, 2 <= block size <= n and lambda >= 1");
        return rep;
    }
    if ((d.lambda * (n - 1)) % (r - 1) != 0 || (d.lambda * n * (n - 1)) % (r * (r - 1)) != 0) {
        problem("no design exists with these parameters: e or b is not an integer");
    } else {
        rep.e = d.lambda * (n - 1) / (r - 1);
        rep.b = d.lambda * n * (n - 1) / (r * (r - 1));
    }
    if (d.blocks.size() != rep.b) {
        problem("block count " + std::to_string(d.blocks.size()) + " differs from b = " + std::to_string(rep.b));
    }
    std::vector<std::size_t> point(n, 0);
    std::vector<std::size_t> pair(n * n, 0);
    for (std::size_t bi = 0; bi < d.blocks.size(); ++bi) {
        const auto& blk = d.blocks[bi];
        std::vector<bool> seen(n, false);
        bool well_formed = blk.size() == r;
        for (auto p : blk) {
            if (p >= n || seen[p]) {
                well_formed = false;
                continue;
            }
            seen[p] = true;
        }
        if (!well_formed) {
            problem("block " + std::to_string(bi + 1) + " is not a " + std::to_string(r) + "-subset of the points");
            continue;
        }
        for (std::size_t x = 0; x < blk.size(); ++x) {
            ++point[blk[x]];
            for (std::size_t y = x + 1; y < blk.size(); ++y) {
                const auto lo = std::min(blk[x], blk[y]);
                const auto hi = std::max(blk[x], blk[y]);
                ++pair[lo * n + hi];
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (point[p] != rep.e) {
            problem("point " + std::to_string(p + 1) + " lies in " + std::to_string(point[p]) + " blocks, expected " +
                    std::to_string(rep.e));
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = x + 1; y < n; ++y) {
            if (pair[x * n + y] != d.lambda) {
                problem("pair {" + std::to_string(x + 1) + "," + std::to_string(y + 1) + "} lies in " +
                        std::to_string(pair[x * n + y]) + " blocks, expected " + std::to_string(d.lambda));
            }
        }
    }
    rep.ok = rep.problems.empty();
    return rep;
}

class InvalidDesign : public std::runtime_error {
public:
    InvalidDesign(const std::string& what, BibdReport report)
        : std::runtime_error(what), report_(std::move(report))
    {}
    const BibdReport& report() const noexcept { return report_; }

private:
    BibdReport report_;
};

/// Blocks B_t = {(t + o) mod n : o in offsets} for t = 0..n-1. Lambda is
/// inferred from the counting identity; the result must validate.
inline BibdDesign cyclic_bibd(std::size_t n, const std::vector<std::size_t>& offsets)
{
    const std::size_t r = offsets.size();
    if (n < 2 || r < 2 || r > n) {
        throw std::invalid_argument("cyclic design: need n >= 2 and 2 <= |offsets| <= n");
    }
    BibdDesign d;
    d.n = n;
    d.block_size = r;
    // b = n blocks, so lambda (n-1) = r (r-1)
    d.lambda = (r * (r - 1)) / (n - 1);
    for (std::size_t t = 0; t < n; ++t) {
        std::vector<std::size_t> blk;
        for (auto o : offsets) {
            blk.push_back((t + o) % n);
        }
        std::sort(blk.begin(), blk.end());
        d.blocks.push_back(std::move(blk));
    }
    if ((r * (r - 1)) % (n - 1) != 0) {
        d.lambda = 0;
    }
    auto rep = validate_bibd(d);
    if (!rep.ok) {
        throw InvalidDesign("cyclic translation of the offsets is not a BIBD", std::move(rep));
    }
    return d;
}

/// Named designs: "13-4-1" (offsets {0,1,3,9} mod 13) and "7-3-1" (the
/// Fano plane, offsets {0,1,3} mod 7).
inline BibdDesign bibd_preset(std::string_view name)
{
    if (name == "13-4-1") {
        return cyclic_bibd(13, {0, 1, 3, 9});
    }
    if (name == "7-3-1" || name == "fano") {
        return cyclic_bibd(7, {0, 1, 3});
    }
    throw std::invalid_argument("unknown design preset '" + std::string(name) + "'");
}

/// n x b matrix; entry (x, t) is 1 when point x lies in block t.
inline std::vector<std::vector<int>> incidence_matrix(const BibdDesign& d)
{
    std::vector<std::vector<int>> m(d.n, std::vector<int>(d.b(), 0));
    for (std::size_t t = 0; t < d.b(); ++t) {
        for (auto p : d.blocks[t]) {
            m.at(p)[t] = 1;
        }
    }
    return m;
}

/// Per-helper download of the balanced code as a multiple of its node size.
struct BalancedBandwidth {
    std::size_t e = 0;
    std::size_t b = 0;
    Rational beta;         // (b + (r-1) lambda) / (b r)
    Rational beta_design;  // (r-1)^2 / (n (n-1)) + 1/r
    Rational overhead;     // beta relative to the per-helper optimum 1/r
};

inline BalancedBandwidth theorem3_beta(std::int64_t n, std::int64_t r, std::int64_t lambda)
{
    if (n < 3 || r < 2 || r >= n || lambda < 1) {
        throw std::invalid_argument("balanced bandwidth: need 2 <= r < n and lambda >= 1");
    }
    if ((lambda * (n - 1)) % (r - 1) != 0 || (lambda * n * (n - 1)) % (r * (r - 1)) != 0) {
        throw std::invalid_argument("balanced bandwidth: no (n, r, lambda) design exists, e or b not integral");
    }
    BalancedBandwidth out;
    out.e = static_cast<std::size_t>(lambda * (n - 1) / (r - 1));
    out.b = static_cast<std::size_t>(lambda * n * (n - 1) / (r * (r - 1)));
    const auto b = static_cast<std::int64_t>(out.b);
    out.beta = Rational(b + (r - 1) * lambda, b * r);
    out.beta_design = Rational((r - 1) * (r - 1), n * (n - 1)) + Rational(1, r);
    if (out.beta != out.beta_design) {
        throw std::logic_error("balanced bandwidth: closed forms disagree");
    }
    out.overhead = out.beta * r;
    return out;
}

} // namespace pgmsr

/**************************************************************************
 * config.cpp
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

#include "config.hpp"

#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "pgmsr/base_msr.hpp"

namespace pgmsr::cli {

namespace {

std::size_t get_size(const nlohmann::json& j, const char* key, std::size_t fallback, bool required)
{
    if (!j.contains(key)) {
        if (required) {
            throw UsageError(std::string("config: missing \"") + key + "\"");
        }
        return fallback;
    }
    const auto& v = j.at(key);
    if (!v.is_number_unsigned()) {
        throw UsageError(std::string("config: \"") + key + "\" must be a nonnegative integer");
    }
    return v.get<std::size_t>();
}

InjectionTable parse_injection(const nlohmann::json& j, std::size_t r, std::size_t s)
{
    if (!j.contains("injection")) {
        return InjectionTable::main_diagonal(r, s);
    }
    const auto& v = j.at("injection");
    if (v.is_string()) {
        const auto name = v.get<std::string>();
        if (name == "main-diag") {
            return InjectionTable::main_diagonal(r, s);
        }
        if (name == "anti-diag") {
            return InjectionTable::anti_diagonal(r, s);
        }
        throw UsageError("config: unknown injection \"" + name + "\" (main-diag, anti-diag or a table)");
    }
    std::vector<std::vector<std::size_t>> rows;
    try {
        rows = v.get<std::vector<std::vector<std::size_t>>>();
    } catch (const nlohmann::json::exception&) {
        throw UsageError("config: injection table must be r rows of s positive integers");
    }
    InjectionTable t;
    try {
        t = InjectionTable::from_one_based(rows);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    if (t.r() != r || t.s() != s) {
        throw UsageError("config: injection table is " + std::to_string(t.r()) + "x" + std::to_string(t.s()) +
                         ", expected " + std::to_string(r) + "x" + std::to_string(s));
    }
    return t;
}

} // namespace

BibdDesign parse_bibd(const nlohmann::json& j)
{
    if (!j.is_object()) {
        throw UsageError("design: expected an object {n, r, lambda, blocks}");
    }
    BibdDesign d;
    d.n = get_size(j, "n", 0, true);
    d.block_size = get_size(j, "r", 0, true);
    d.lambda = get_size(j, "lambda", 0, true);
    std::vector<std::vector<std::size_t>> blocks;
    try {
        blocks = j.at("blocks").get<std::vector<std::vector<std::size_t>>>();
    } catch (const nlohmann::json::exception&) {
        throw UsageError("design: \"blocks\" must be a list of integer lists");
    }
    for (auto& blk : blocks) {
        for (auto& p : blk) {
            if (p == 0 || p > d.n) {
                throw UsageError("design: points are 1-based and at most n");
            }
            --p;
        }
        std::sort(blk.begin(), blk.end());
        d.blocks.push_back(std::move(blk));
    }
    return d;
}

nlohmann::json bibd_to_json(const BibdDesign& d)
{
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& blk : d.blocks) {
        nlohmann::json b = nlohmann::json::array();
        for (auto p : blk) {
            b.push_back(p + 1);
        }
        blocks.push_back(std::move(b));
    }
    return {{"n", d.n}, {"r", d.block_size}, {"lambda", d.lambda}, {"blocks", std::move(blocks)}};
}

CodeConfig parse_config(const nlohmann::json& j)
{
    if (!j.is_object()) {
        throw UsageError("config: expected a JSON object");
    }
    CodeConfig c;
    const auto mode = j.value("mode", std::string("piggyback"));
    if (mode == "piggyback") {
        c.mode = Mode::Piggyback;
    } else if (mode == "balanced") {
        c.mode = Mode::Balanced;
    } else {
        throw UsageError("config: mode must be \"piggyback\" or \"balanced\"");
    }
    c.w = static_cast<unsigned>(get_size(j, "w", 16, false));
    if (c.w != 8 && c.w != 16) {
        throw UsageError("config: w must be 8 or 16");
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) {
            throw UsageError("config: seed must be a nonnegative integer");
        }
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (c.mode == Mode::Balanced) {
        if (!j.contains("bibd")) {
            throw UsageError("config: balanced mode needs \"bibd\" (preset name or design object)");
        }
        const auto& b = j.at("bibd");
        try {
            c.bibd = b.is_string() ? bibd_preset(b.get<std::string>()) : parse_bibd(b);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("config: ") + e.what());
        } catch (const InvalidDesign& e) {
            throw UsageError(std::string("config: ") + e.what());
        }
        c.r = c.bibd.block_size;
        c.k = get_size(j, "k", c.bibd.n > c.r ? c.bibd.n - c.r : 0, false);
        c.s = get_size(j, "s", c.r, false);
        if (j.contains("r") && get_size(j, "r", 0, true) != c.r) {
            throw UsageError("config: r differs from the design block size");
        }
        if (c.s != c.r) {
            throw UsageError("config: balanced mode requires s = r");
        }
        if (c.k + c.r != c.bibd.n) {
            throw UsageError("config: balanced mode requires k + r = n of the design");
        }
    } else {
        c.k = get_size(j, "k", 0, true);
        c.r = get_size(j, "r", 0, true);
        c.s = get_size(j, "s", c.r, false);
    }
    if (c.k < 2 || c.r < 2 || c.r > c.k || c.s < 2 || c.s > c.r) {
        throw UsageError("config: need 2 <= s <= r <= k");
    }
    try {
        BaseParams{c.k, c.r, c.seed}.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    c.injection = c.mode == Mode::Balanced ? InjectionTable::main_diagonal(c.r, c.r) : parse_injection(j, c.r, c.s);
    if (c.mode == Mode::Balanced && j.contains("injection") &&
        !(j.at("injection").is_string() && j.at("injection").get<std::string>() == "main-diag")) {
        throw UsageError("config: balanced mode uses the main-diag injection");
    }
    return c;
}

nlohmann::json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open " + path.string());
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(path.string() + ": " + e.what());
    }
}

CodeConfig load_config(const std::filesystem::path& path)
{
    return parse_config(read_json_file(path));
}

nlohmann::json to_json(const CodeConfig& c)
{
    nlohmann::json j;
    j["mode"] = c.mode == Mode::Piggyback ? "piggyback" : "balanced";
    j["k"] = c.k;
    j["r"] = c.r;
    j["s"] = c.s;
    j["w"] = c.w;
    j["seed"] = c.seed;
    j["injection"] = c.injection.to_one_based();
    if (c.mode == Mode::Balanced) {
        j["bibd"] = bibd_to_json(c.bibd);
    }
    return j;
}

std::string canonical_text(const CodeConfig& c)
{
    // object keys are kept sorted by nlohmann::json
    return to_json(c).dump();
}

Digest sha256(const std::string& bytes)
{
    Digest d{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), d.data(), &len, EVP_sha256(), nullptr) != 1 || len != d.size()) {
        throw std::runtime_error("sha256 failed");
    }
    return d;
}

Digest config_digest(const CodeConfig& c)
{
    return sha256(canonical_text(c));
}

std::string to_hex(const Digest& d)
{
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (auto b : d) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 15]);
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw UsageError("cannot write " + tmp.string());
        }
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) {
            throw UsageError("short write to " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw UsageError("cannot rename " + tmp.string() + ": " + ec.message());
    }
}

} // namespace pgmsr::cli

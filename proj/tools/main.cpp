/**************************************************************************
 * main.cpp
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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace cli = pgmsr::cli;

int main(int argc, char** argv)
{
    CLI::App app{"Piggybacked MSR codes: encode, reconstruct, repair and measure"};
    app.require_subcommand(1);
    cli::Io io{std::cout, std::cerr};

    cli::EncodeArgs enc;
    auto* encode = app.add_subcommand("encode", "Split a file into k+r shards");
    encode->add_option("--config", enc.config, "Code config (JSON)")->required()->check(CLI::ExistingFile);
    encode->add_option("--input", enc.input, "File to encode")->required()->check(CLI::ExistingFile);
    encode->add_option("--out", enc.out_dir, "Shard directory")->required();
    encode->add_flag("--allow-suboptimal", enc.allow_suboptimal, "Accept injection tables with uneven supports");

    cli::ReconstructArgs rec;
    auto* reconstruct = app.add_subcommand("reconstruct", "Rebuild the file from k shards");
    reconstruct->add_option("--config", rec.config)->required()->check(CLI::ExistingFile);
    reconstruct->add_option("--shards", rec.shards)->required();
    reconstruct->add_option("--nodes", rec.nodes, "Comma-separated 1-based node ids (default: first k present)")
        ->delimiter(',');
    reconstruct->add_option("--out", rec.out)->required();
    reconstruct->add_flag("--allow-suboptimal", rec.allow_suboptimal);

    cli::RepairArgs rep;
    std::string ledger;
    auto* repair = app.add_subcommand("repair", "Regenerate one lost shard and meter the download");
    repair->add_option("--config", rep.config)->required()->check(CLI::ExistingFile);
    repair->add_option("--shards", rep.shards)->required();
    repair->add_option("--node", rep.node, "1-based id of the failed node")->required();
    repair->add_option("--ledger", ledger, "Write the transfer ledger as CSV");
    repair->add_flag("--allow-suboptimal", rep.allow_suboptimal);

    cli::VerifyArgs ver;
    auto* verify = app.add_subcommand("verify", "Structural, MDS, reconstruction and repair checks");
    verify->add_option("--config", ver.config)->required()->check(CLI::ExistingFile);
    verify->add_option("--max-alpha", ver.max_alpha, "Largest r^k for the exhaustive checks")->capture_default_str();
    verify->add_flag("--allow-suboptimal", ver.allow_suboptimal);

    cli::BenchArgs bench_args;
    std::string bench_out;
    auto* bench = app.add_subcommand("bench", "Analytic and measured repair bandwidth table");
    bench->add_option("--grid", bench_args.grid, "e.g. \"k=4,8;r=2;s=2\"")->required();
    bench->add_option("--out", bench_out, "Output file; .md for Markdown, otherwise CSV");
    bench->add_option("--w", bench_args.w, "Symbol width")->capture_default_str();
    bench->add_option("--max-alpha", bench_args.max_alpha, "Largest r^k that is simulated")->capture_default_str();

    cli::BibdArgs bibd_args;
    std::string bibd_validate, bibd_preset, bibd_emit;
    auto* bibd = app.add_subcommand("bibd", "Validate a block design or emit a preset");
    bibd->add_option("--validate", bibd_validate, "Design file {n, r, lambda, blocks}");
    bibd->add_option("--preset", bibd_preset, "13-4-1 or 7-3-1");
    bibd->add_option("--emit", bibd_emit, "Where to write the preset");

    cli::BandwidthArgs bw;
    std::int64_t bw_s = 0;
    auto* bandwidth = app.add_subcommand("bandwidth", "Closed-form repair bandwidths");
    bandwidth->add_option("--k", bw.k)->required();
    bandwidth->add_option("--r", bw.r)->required();
    auto* s_opt = bandwidth->add_option("--s", bw_s, "Instances (default r)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kUsage;
    }

    if (*reconstruct) {
        return cli::guarded([&] { return cli::cmd_reconstruct(rec, io); }, io);
    }
    if (*encode) {
        return cli::guarded([&] { return cli::cmd_encode(enc, io); }, io);
    }
    if (*repair) {
        if (!ledger.empty()) {
            rep.ledger = ledger;
        }
        return cli::guarded([&] { return cli::cmd_repair(rep, io); }, io);
    }
    if (*verify) {
        return cli::guarded([&] { return cli::cmd_verify(ver, io); }, io);
    }
    if (*bench) {
        if (!bench_out.empty()) {
            bench_args.out = bench_out;
        }
        return cli::guarded([&] { return cli::cmd_bench(bench_args, io); }, io);
    }
    if (*bibd) {
        if (!bibd_validate.empty()) {
            bibd_args.validate = bibd_validate;
        }
        if (!bibd_preset.empty()) {
            bibd_args.preset = bibd_preset;
        }
        if (!bibd_emit.empty()) {
            bibd_args.emit = bibd_emit;
        }
        return cli::guarded([&] { return cli::cmd_bibd(bibd_args, io); }, io);
    }
    if (*s_opt) {
        bw.s = bw_s;
    }
    return cli::guarded([&] { return cli::cmd_bandwidth(bw, io); }, io);
}

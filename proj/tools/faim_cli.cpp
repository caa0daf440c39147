// SPDX-License-Identifier: Apache-2.0
//
// faim: link-level simulation library for fluid-antenna index-modulation MIMO
// Copyright (C) 2026 The faim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "faim/harness.hpp"
#include "faim/simd/kernels.hpp"

namespace
{
    using namespace faim;

    constexpr int exit_config = 1;
    constexpr int exit_guard = 2;

    struct CommonOptions
    {
        std::string profile;
        std::string config;
        std::optional<std::uint64_t> seed;
        std::string snr;
        std::optional<double> xi;
        std::string detector;
        std::string codebook;
        std::string scheme;
        std::string out;
        std::optional<int> threads;
        std::vector<std::string> settings;
    };

    void add_common(CLI::App *app, CommonOptions &o)
    {
        app->add_option("--profile", o.profile, "Preset: " + [] {
            std::string s;
            for (const auto &n : profile_names())
                s += (s.empty() ? "" : ", ") + n;
            return s;
        }());
        app->add_option("--config", o.config, "key = value configuration file");
        app->add_option("--seed", o.seed, "Master seed");
        app->add_option("--snr", o.snr, "SNR points in dB: list a,b,c or range start:step:stop, 'inf' = noiseless");
        app->add_option("--out", o.out, "Output CSV path (default: stdout)");
        app->add_option("--set", o.settings, "Extra key=value setting, applied last (repeatable)");
    }

    void add_link_options(CLI::App *app, CommonOptions &o)
    {
        app->add_option("--xi", o.xi, "CSI error coefficient in [0, 1]");
        app->add_option("--detector", o.detector, "ml | sbl | esbl");
        app->add_option("--codebook", o.codebook, "random | designed");
        app->add_option("--scheme", o.scheme, "fa-im | fa-vblast");
        app->add_option("--threads", o.threads, "Worker threads per SNR point");
    }

    ExperimentSpec build_spec(const CommonOptions &o)
    {
        ExperimentSpec s = o.profile.empty() ? profile("fig4-a") : profile(o.profile);
        if (!o.config.empty())
            apply_config_file(s, o.config);
        if (o.seed)
            s.seed = *o.seed;
        if (!o.snr.empty())
            s.snr_db = parse_snr_list(o.snr);
        if (o.xi)
            s.xi = *o.xi;
        if (!o.detector.empty())
            apply_setting(s, "detector", o.detector);
        if (!o.codebook.empty())
            s.codebook = parse_codebook(o.codebook);
        if (!o.scheme.empty())
            s.scheme = parse_scheme(o.scheme);
        if (o.threads)
            s.threads = *o.threads;
        for (const std::string &kv : o.settings)
        {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw ConfigError("--set expects key=value, got '" + kv + "'");
            apply_setting(s, kv.substr(0, eq), kv.substr(eq + 1));
        }
        return s;
    }

    void output(const CsvTable &t, const std::string &path)
    {
        if (path.empty())
            write_csv(t, std::cout);
        else
            emit_csv(t, path);
    }

    std::vector<int> parse_int_list(const std::string &text, const char *what)
    {
        std::vector<int> out;
        for (double v : parse_snr_list(text))
        {
            if (v != static_cast<int>(v))
                throw ConfigError(std::string(what) + " values must be integers");
            out.push_back(static_cast<int>(v));
        }
        return out;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Link-level simulation of fluid-antenna index-modulation MIMO"};
    app.require_subcommand(1);
    std::string simd_backend;
    app.add_option("--simd", simd_backend, "Kernel backend: scalar | avx2 (default: best available)");

    CommonOptions ber_o;
    CLI::App *ber = app.add_subcommand("ber", "Monte Carlo bit-error-rate curve");
    add_common(ber, ber_o);
    add_link_options(ber, ber_o);

    CommonOptions se_o;
    std::string se_nt = "1:1:8", se_p = "4,8,16,20,32";
    int se_m = 4;
    CLI::App *se = app.add_subcommand("se", "Spectral efficiency of FA-IM and baselines");
    se->add_option("--nt", se_nt, "Nt values (list or range)");
    se->add_option("--p", se_p, "Grid sizes P (list or range)");
    se->add_option("--m", se_m, "Modulation order");
    se->add_option("--out", se_o.out, "Output CSV path (default: stdout)");

    CommonOptions cx_o;
    std::string accounting = "pre";
    CLI::App *cx = app.add_subcommand("complexity", "Detector flop counts");
    add_common(cx, cx_o);
    cx->add_option("--accounting", accounting, "pre | post: candidate count charged per pruning iteration");

    CommonOptions ab_o;
    std::string model = "finite", form = "exact", gap = "mean";
    int geometry_samples = 1000;
    CLI::App *ab = app.add_subcommand("abep", "Union bound on the average bit error probability");
    add_common(ab, ab_o);
    ab->add_option("--model", model, "finite | infinite");
    ab->add_option("--form", form, "exact | scalar");
    ab->add_option("--gap", gap, "mean | max: symbol gap rule for the scalar form");
    ab->add_option("--geometry-samples", geometry_samples, "Angle draws averaged by the finite-path model");

    CommonOptions ch_o;
    CLI::App *ch = app.add_subcommand("channel", "Dump one channel realization as JSON");
    add_common(ch, ch_o);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    try
    {
        if (!simd_backend.empty())
        {
            if (simd_backend == "scalar")
                simd::set_backend(simd::Backend::scalar);
            else if (simd_backend == "avx2")
                simd::set_backend(simd::Backend::avx2);
            else
                throw ConfigError("--simd must be scalar or avx2");
        }

        if (ber->parsed())
        {
            const ExperimentSpec spec = build_spec(ber_o);
            const BerCurve curve = spec.scheme == Scheme::fa_vblast ? run_vblast_baseline(spec)
                                                                    : run_ber_experiment(spec);
            for (const BerPoint &p : curve.points)
                if (p.capped)
                    std::fprintf(stderr, "note: snr %s dB stopped at max_trials with %llu bit errors\n",
                                 format_double(p.snr_db).c_str(), static_cast<unsigned long long>(p.bit_errors));
            output(ber_table(std::span<const BerCurve>(&curve, 1)), ber_o.out);
        }
        else if (se->parsed())
        {
            const std::vector<int> nts = parse_int_list(se_nt, "--nt");
            const std::vector<int> ps = parse_int_list(se_p, "--p");
            output(se_table(run_se_sweep(nts, ps, se_m)), se_o.out);
        }
        else if (cx->parsed())
        {
            if (accounting != "pre" && accounting != "post")
                throw ConfigError("--accounting must be pre or post");
            const FlopAccounting acc = accounting == "pre" ? FlopAccounting::pre_prune : FlopAccounting::post_prune;
            std::vector<ComplexityCase> cases;
            if (cx_o.profile.empty() && cx_o.config.empty() && cx_o.settings.empty())
                cases = default_complexity_cases();
            else
            {
                const ExperimentSpec s = build_spec(cx_o);
                PruningSchedule sched = s.schedule;
                if (sched.prune_counts.empty())
                    sched.prune_counts = {2, 2, 2, 2, 2};
                cases.push_back({s.config.nt, s.config.num_rx(), s.config.num_positions(), s.config.modulation_order,
                                 sched});
            }
            output(complexity_table(run_complexity_table(cases, acc)), cx_o.out);
        }
        else if (ab->parsed())
        {
            const ExperimentSpec spec = build_spec(ab_o);
            UpepModel m;
            if (model == "finite")
                m.kind = ChannelModelKind::finite_path;
            else if (model == "infinite")
                m.kind = ChannelModelKind::infinite_path;
            else
                throw ConfigError("--model must be finite or infinite");
            if (form == "exact")
                m.form = UpepForm::exact;
            else if (form == "scalar")
                m.form = UpepForm::scalar_gap;
            else
                throw ConfigError("--form must be exact or scalar");
            if (gap == "mean")
                m.gap_rule = SymbolGapRule::mean;
            else if (gap == "max")
                m.gap_rule = SymbolGapRule::max;
            else
                throw ConfigError("--gap must be mean or max");
            if (geometry_samples < 1)
                throw ConfigError("--geometry-samples must be positive");
            m.geometry_samples = geometry_samples;
            m.seed = spec.seed;
            output(abep_table(run_abep_curve(spec, m)), ab_o.out);
        }
        else if (ch->parsed())
        {
            const ExperimentSpec spec = build_spec(ch_o);
            spec.config.validate();
            const GridGeometry g = make_geometry(spec.config);
            Rng rng(spec.seed);
            const std::string json = realization_to_json(spec.config, g, draw_channel(spec.config, g, rng));
            if (ch_o.out.empty())
                std::cout << json << '\n';
            else
            {
                std::FILE *f = std::fopen(ch_o.out.c_str(), "wb");
                if (!f || std::fputs(json.c_str(), f) < 0 || std::fclose(f) != 0)
                    throw std::runtime_error("cannot write '" + ch_o.out + "'");
            }
        }
        return 0;
    }
    catch (const ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const GuardError &e)
    {
        std::cerr << "guard: " << e.what() << '\n';
        return exit_guard;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_guard;
    }
}

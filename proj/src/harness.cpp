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

#include "faim/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include "faim/rng.hpp"

namespace faim
{
    namespace
    {
        // Stream identifiers within a trial.
        enum : std::uint64_t
        {
            stream_channel = 1,
            stream_bits = 2,
            stream_csi = 3,
            stream_noise = 4,
            stream_codebook = 5
        };

        std::uint64_t count_bit_errors(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b)
        {
            std::uint64_t e = 0;
            for (std::size_t i = 0; i < a.size(); ++i)
                e += (a[i] != b[i]) ? 1u : 0u;
            return e;
        }

        // Positions of the Nt largest column norms, ties to the lower index, ascending.
        Pattern strongest_columns(const CMatrix &h, int nt)
        {
            std::vector<int> order(static_cast<std::size_t>(h.cols()));
            std::iota(order.begin(), order.end(), 0);
            const RVector norms = h.colwise().squaredNorm().transpose();
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return norms(a) > norms(b); });
            Pattern p(order.begin(), order.begin() + nt);
            std::sort(p.begin(), p.end());
            return p;
        }

        // Noiseless runs still need a positive N0 inside the SBL recursion.
        double sbl_noise(double n0, const CMatrix &h)
        {
            if (n0 > 0.0)
                return n0;
            const double floor = 1e-10 * h.squaredNorm() / static_cast<double>(h.rows() * h.cols());
            return floor > 0.0 ? floor : std::numeric_limits<double>::min();
        }
    }

    std::string_view scheme_name(Scheme s) { return s == Scheme::fa_im ? "fa-im" : "fa-vblast"; }

    Scheme parse_scheme(std::string_view name)
    {
        if (name == "fa-im")
            return Scheme::fa_im;
        if (name == "fa-vblast")
            return Scheme::fa_vblast;
        throw ConfigError("unknown scheme '" + std::string(name) + "' (expected fa-im or fa-vblast)");
    }

    std::string_view codebook_name(CodebookKind k) { return k == CodebookKind::random ? "random" : "designed"; }

    CodebookKind parse_codebook(std::string_view name)
    {
        if (name == "random")
            return CodebookKind::random;
        if (name == "designed")
            return CodebookKind::designed;
        throw ConfigError("unknown codebook '" + std::string(name) + "' (expected random or designed)");
    }

    int ExperimentSpec::rate_bits() const
    {
        return scheme == Scheme::fa_im ? config.rate_bits() : config.symbol_bits();
    }

    void ExperimentSpec::validate() const
    {
        try
        {
            config.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(e.what());
        }
        if (snr_db.empty())
            throw ConfigError("no SNR points given");
        for (double s : snr_db)
            if (std::isnan(s) || s == -std::numeric_limits<double>::infinity())
                throw ConfigError("SNR points must be finite or +inf");
        if (!(xi >= 0.0 && xi <= 1.0))
            throw ConfigError("xi must lie in [0, 1]");
        if (min_bit_errors < 1 || max_trials < 1 || batch_size < 1)
            throw ConfigError("min_bit_errors, max_trials and batch_size must be positive");
        if (threads < 1)
            throw ConfigError("threads must be at least 1");
        if (scheme == Scheme::fa_vblast && detector != DetectorKind::ml)
            throw ConfigError("fa-vblast supports only the ml detector");
        if (detector != DetectorKind::ml)
        {
            PruningSchedule s = schedule;
            if (detector == DetectorKind::sbl)
                s.prune_counts.clear();
            try
            {
                s.validate(config.num_positions(), config.nt);
            }
            catch (const std::invalid_argument &e)
            {
                throw ConfigError(e.what());
            }
        }
    }

    double snr_to_n0(double snr_db)
    {
        if (snr_db == std::numeric_limits<double>::infinity())
            return 0.0;
        return std::pow(10.0, -snr_db / 10.0);
    }

    std::string spec_hash(const ExperimentSpec &spec)
    {
        std::ostringstream s;
        const SystemConfig &c = spec.config;
        s << scheme_name(spec.scheme) << '|' << detector_name(spec.detector) << '|' << codebook_name(spec.codebook)
          << '|' << c.p1 << ',' << c.p2 << ',' << c.n1 << ',' << c.n2 << ',' << c.nt << ',' << c.modulation_order
          << ',' << c.num_paths << ',' << format_double(c.wavelength) << ',' << format_double(c.tx_region_wavelengths)
          << ',' << format_double(c.rx_spacing_wavelengths) << ',' << format_double(c.channel_gain()) << ','
          << (c.prm_mode == PrmMode::diagonal ? 'd' : 'g') << '|' << format_double(spec.xi) << '|'
          << spec.min_bit_errors << ',' << spec.max_trials << ',' << spec.batch_size << '|' << spec.seed << '|'
          << spec.schedule.max_iterations << ':';
        for (int p : spec.schedule.prune_counts)
            s << p << ',';
        s << '|' << static_cast<int>(spec.placement);
        for (double v : spec.snr_db)
            s << '|' << format_double(v);
        // FNV-1a, 64 bit
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char ch : s.str())
        {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    Codebook experiment_codebook(const ExperimentSpec &spec)
    {
        Rng rng = derive_rng(spec.seed, {stream_codebook});
        return random_codebook(spec.config.num_positions(), spec.config.nt, rng);
    }

    std::uint64_t run_trial(const ExperimentSpec &spec, const GridGeometry &geometry, const Codebook &fixed,
                            std::uint64_t trial, double n0)
    {
        const SystemConfig &cfg = spec.config;
        const Constellation &con = constellation(cfg.modulation_order);

        Rng channel_rng = derive_rng(spec.seed, {trial, stream_channel});
        const CMatrix h = draw_channel(cfg, geometry, channel_rng).h;
        CMatrix h_est;
        if (spec.xi > 0.0)
        {
            Rng csi_rng = derive_rng(spec.seed, {trial, stream_csi});
            h_est = corrupt_csi(h, spec.xi, cfg, geometry, csi_rng);
        }
        const CMatrix &h_rx = spec.xi > 0.0 ? h_est : h;

        Rng bit_rng = derive_rng(spec.seed, {trial, stream_bits});
        const Bits bits = random_bits(static_cast<std::size_t>(spec.rate_bits()), bit_rng);
        Rng noise_rng = derive_rng(spec.seed, {trial, stream_noise});
        const MlOptions ml_options{spec.max_hypotheses};

        if (spec.scheme == Scheme::fa_vblast)
        {
            const Pattern pattern = spec.placement == VblastPlacement::best_norm
                                        ? strongest_columns(h_rx, cfg.nt)
                                        : fixed.pattern(0);
            const Codebook cb = spec.placement == VblastPlacement::best_norm
                                    ? Codebook::single(cfg.num_positions(), pattern)
                                    : fixed;
            const auto k = static_cast<std::size_t>(con.bits_per_symbol());
            std::vector<Complex> symbols;
            for (std::size_t i = 0; i < bits.size(); i += k)
                symbols.push_back(con.point(con.label_of(std::span<const std::uint8_t>(bits).subspan(i, k))));
            const CVector x = build_transmit_vector(pattern, symbols, cfg.num_positions());
            const CVector y = transmit(x, h, n0, noise_rng);
            const DetectionResult r = ml_detect(y, h_rx, cb, con, ml_options);
            return count_bit_errors(bits, r.bits);
        }

        std::optional<Codebook> designed;
        if (spec.codebook == CodebookKind::designed)
            designed.emplace(design_codebook(h_rx, cfg.nt));
        const Codebook &cb = designed ? *designed : fixed;
        const Frame frame = modulate_frame(bits, cfg, cb);
        const CVector y = transmit(frame.x, h, n0, noise_rng);

        DetectionResult r;
        switch (spec.detector)
        {
        case DetectorKind::ml:
            r = ml_detect(y, h_rx, cb, con, ml_options);
            break;
        case DetectorKind::sbl:
            r = original_sbl_detect(y, h_rx, sbl_noise(n0, h_rx), spec.schedule.max_iterations, cb, con);
            break;
        case DetectorKind::esbl:
            r = efficient_sbl_detect(y, h_rx, sbl_noise(n0, h_rx), spec.schedule, cb, con);
            break;
        }
        return count_bit_errors(frame.raw_bits, r.bits);
    }

    namespace
    {
        // Sum of bit errors over trials [first, first + count), split across threads by residue.
        std::uint64_t run_batch(const ExperimentSpec &spec, const GridGeometry &geometry, const Codebook &fixed,
                                std::uint64_t first, std::uint64_t count, double n0)
        {
            const auto workers = static_cast<std::uint64_t>(std::min<std::uint64_t>(
                static_cast<std::uint64_t>(spec.threads), count));
            if (workers <= 1)
            {
                std::uint64_t e = 0;
                for (std::uint64_t t = first; t < first + count; ++t)
                    e += run_trial(spec, geometry, fixed, t, n0);
                return e;
            }
            std::vector<std::uint64_t> errors(workers, 0);
            std::exception_ptr failure;
            std::mutex failure_mutex;
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (std::uint64_t w = 0; w < workers; ++w)
                pool.emplace_back(
                    [&, w]
                    {
                        try
                        {
                            for (std::uint64_t t = first + w; t < first + count; t += workers)
                                errors[w] += run_trial(spec, geometry, fixed, t, n0);
                        }
                        catch (...)
                        {
                            const std::lock_guard lock(failure_mutex);
                            if (!failure)
                                failure = std::current_exception();
                        }
                    });
            for (auto &t : pool)
                t.join();
            if (failure)
                std::rethrow_exception(failure);
            return std::accumulate(errors.begin(), errors.end(), std::uint64_t{0});
        }

        BerCurve run_curve(const ExperimentSpec &spec)
        {
            spec.validate();
            const GridGeometry geometry = make_geometry(spec.config);
            const Codebook fixed =
                spec.scheme == Scheme::fa_vblast
                    ? Codebook::single(spec.config.num_positions(), unrank_combination(0, spec.config.num_positions(),
                                                                                       spec.config.nt))
                    : experiment_codebook(spec);

            BerCurve curve;
            curve.scheme = spec.scheme;
            curve.detector = spec.detector;
            curve.codebook = spec.codebook;
            curve.xi = spec.xi;
            curve.seed = spec.seed;
            curve.spec_hash = spec_hash(spec);

            std::vector<double> snr = spec.snr_db;
            std::stable_sort(snr.begin(), snr.end());
            const double bits_per_trial = spec.rate_bits();
            for (double s : snr)
            {
                const auto start = std::chrono::steady_clock::now();
                const double n0 = snr_to_n0(s);
                BerPoint p;
                p.snr_db = s;
                while (p.trials < spec.max_trials && p.bit_errors < spec.min_bit_errors)
                {
                    const std::uint64_t n = std::min(spec.batch_size, spec.max_trials - p.trials);
                    p.bit_errors += run_batch(spec, geometry, fixed, p.trials, n, n0);
                    p.trials += n;
                }
                p.capped = p.bit_errors < spec.min_bit_errors;
                p.ber = static_cast<double>(p.bit_errors) / (static_cast<double>(p.trials) * bits_per_trial);
                p.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                curve.points.push_back(p);
            }
            return curve;
        }
    }

    BerCurve run_ber_experiment(const ExperimentSpec &spec)
    {
        return run_curve(spec);
    }

    BerCurve run_vblast_baseline(const ExperimentSpec &spec)
    {
        if (spec.scheme != Scheme::fa_vblast)
            throw ConfigError("run_vblast_baseline: scheme must be fa-vblast");
        return run_curve(spec);
    }

    std::vector<SeRow> run_se_sweep(std::span<const int> nt_values, std::span<const int> p_values,
                                    int modulation_order)
    {
        log2_exact(modulation_order);
        std::vector<SeRow> rows;
        for (int nt : nt_values)
        {
            if (nt < 1)
                throw ConfigError("run_se_sweep: Nt must be positive");
            const BaselineSe b = se_baselines(nt, modulation_order);
            for (int p : p_values)
                if (p >= nt)
                    rows.push_back({nt, "fa-im", p, se_fa_im(nt, p, modulation_order)});
            rows.push_back({nt, "fa-vblast", 0, b.fa_vblast});
            rows.push_back({nt, "sm-mimo", 0, b.sm_mimo});
        }
        return rows;
    }

    std::vector<ComplexityCase> default_complexity_cases()
    {
        PruningSchedule proposed;
        proposed.prune_counts = {2, 2, 2, 2, 2};
        proposed.max_iterations = 10;
        return {{4, 20, 20, 4, proposed}, {6, 20, 20, 4, proposed}, {8, 32, 32, 4, proposed}};
    }

    std::vector<ComplexityRow> run_complexity_table(std::span<const ComplexityCase> cases, FlopAccounting accounting)
    {
        std::vector<ComplexityRow> rows;
        for (const ComplexityCase &c : cases)
        {
            try
            {
                c.schedule.validate(c.p, c.nt);
                rows.push_back({c.nt, c.nr, c.p, c.m, "ml", ml_flops(c.nt, c.nr, c.p, c.m)});
                rows.push_back({c.nt, c.nr, c.p, c.m, "sbl",
                                sbl_flops(c.nr, c.p, {}, c.schedule.max_iterations, accounting)});
                rows.push_back({c.nt, c.nr, c.p, c.m, "esbl",
                                sbl_flops(c.nr, c.p, c.schedule.prune_counts, c.schedule.max_iterations, accounting)});
            }
            catch (const std::invalid_argument &e)
            {
                throw ConfigError(e.what());
            }
        }
        return rows;
    }

    std::string_view upep_model_name(const UpepModel &m)
    {
        if (m.kind == ChannelModelKind::finite_path)
            return m.form == UpepForm::exact ? "finite" : "finite-scalar";
        return m.form == UpepForm::exact ? "infinite" : "infinite-scalar";
    }

    std::vector<AbepRow> run_abep_curve(const ExperimentSpec &spec, const UpepModel &model)
    {
        spec.validate();
        if (spec.scheme != Scheme::fa_im)
            throw ConfigError("the ABEP bound is defined for fa-im only");
        std::vector<double> snr = spec.snr_db;
        std::stable_sort(snr.begin(), snr.end());
        std::vector<double> n0;
        for (double s : snr)
        {
            if (std::isinf(s))
                throw ConfigError("the ABEP bound needs finite SNR points");
            n0.push_back(snr_to_n0(s));
        }
        const Codebook cb = experiment_codebook(spec);
        const std::vector<double> bound = abep_bound(spec.config, cb, model, n0);
        std::vector<AbepRow> rows;
        for (std::size_t i = 0; i < snr.size(); ++i)
            rows.push_back({snr[i], bound[i], std::string(upep_model_name(model))});
        return rows;
    }
}

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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "faim/analysis.hpp"
#include "faim/config.hpp"
#include "faim/detect.hpp"
#include "faim/flops.hpp"
#include "faim/modem.hpp"

namespace faim
{
    inline constexpr std::string_view code_version = "faim 0.1.0";

    // Bad configuration or command-line input.
    class ConfigError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    enum class Scheme
    {
        fa_im,
        fa_vblast
    };

    std::string_view scheme_name(Scheme s);
    Scheme parse_scheme(std::string_view name);
    std::string_view codebook_name(CodebookKind k);
    CodebookKind parse_codebook(std::string_view name);

    enum class VblastPlacement
    {
        best_norm,   // Nt columns of the (estimated) channel with the largest norms
        fixed_corner // positions 0 .. Nt-1
    };

    struct ExperimentSpec
    {
        std::string name;
        Scheme scheme = Scheme::fa_im;
        DetectorKind detector = DetectorKind::ml;
        SystemConfig config;
        CodebookKind codebook = CodebookKind::random;
        std::vector<double> snr_db;
        double xi = 0.0;
        std::uint64_t min_bit_errors = 200;
        std::uint64_t max_trials = 10'000'000;
        std::uint64_t seed = 1;
        int threads = 1;
        std::uint64_t batch_size = 256;
        PruningSchedule schedule; // sbl uses max_iterations only
        VblastPlacement placement = VblastPlacement::best_norm;
        double max_hypotheses = 1e8;

        // Bits carried per channel use by the configured scheme.
        int rate_bits() const;
        // Throws ConfigError.
        void validate() const;
    };

    struct BerPoint
    {
        double snr_db = 0.0;
        std::uint64_t trials = 0;
        std::uint64_t bit_errors = 0;
        double ber = 0.0;
        double wall_time = 0.0; // seconds
        bool capped = false;    // stopped at max_trials before reaching min_bit_errors
    };

    struct BerCurve
    {
        Scheme scheme = Scheme::fa_im;
        DetectorKind detector = DetectorKind::ml;
        CodebookKind codebook = CodebookKind::random;
        double xi = 0.0;
        std::uint64_t seed = 0;
        std::string spec_hash;
        std::string version{code_version};
        std::vector<BerPoint> points;
    };

    // 10^(-snr/10); +inf maps to 0 (noiseless).
    double snr_to_n0(double snr_db);

    // Stable digest of every field that affects results.
    std::string spec_hash(const ExperimentSpec &spec);

    // The codebook used when spec.codebook is random: drawn once per experiment from the seed.
    Codebook experiment_codebook(const ExperimentSpec &spec);

    // Bit errors of a single trial. Channel, CSI error, bits and noise come from streams keyed by
    // (seed, trial), so every SNR point, codebook kind and detector sees the same draws.
    std::uint64_t run_trial(const ExperimentSpec &spec, const GridGeometry &geometry, const Codebook &fixed,
                            std::uint64_t trial, double n0);

    BerCurve run_ber_experiment(const ExperimentSpec &spec);
    BerCurve run_vblast_baseline(const ExperimentSpec &spec);

    struct SeRow
    {
        int nt = 0;
        std::string scheme;
        int p = 0;
        double se = 0.0;
    };

    // Rows for fa-im (every P >= Nt), fa-vblast and sm-mimo per Nt.
    std::vector<SeRow> run_se_sweep(std::span<const int> nt_values, std::span<const int> p_values,
                                    int modulation_order);

    struct ComplexityCase
    {
        int nt = 0;
        int nr = 0;
        int p = 0;
        int m = 0;
        PruningSchedule schedule;
    };

    struct ComplexityRow
    {
        int nt = 0;
        int nr = 0;
        int p = 0;
        int m = 0;
        std::string detector;
        double flops = 0.0;
    };

    std::vector<ComplexityCase> default_complexity_cases();
    std::vector<ComplexityRow> run_complexity_table(std::span<const ComplexityCase> cases,
                                                    FlopAccounting accounting = FlopAccounting::pre_prune);

    struct AbepRow
    {
        double snr_db = 0.0;
        double bound = 0.0;
        std::string model;
    };

    std::string_view upep_model_name(const UpepModel &m);
    std::vector<AbepRow> run_abep_curve(const ExperimentSpec &spec, const UpepModel &model);

    // ---------------------------------------------------------------- CSV

    struct CsvTable
    {
        std::vector<std::string> header;
        std::vector<std::vector<std::string>> rows;
    };

    // %.12g
    std::string format_double(double v);

    CsvTable ber_table(std::span<const BerCurve> curves);
    CsvTable se_table(std::span<const SeRow> rows);
    CsvTable complexity_table(std::span<const ComplexityRow> rows);
    CsvTable abep_table(std::span<const AbepRow> rows);

    void write_csv(const CsvTable &table, std::ostream &out);
    void emit_csv(const CsvTable &table, const std::filesystem::path &path);
    CsvTable read_csv(const std::filesystem::path &path);

    // ---------------------------------------------------------------- configuration

    // "a,b,c", "start:step:stop" (inclusive) or a mix; "inf" is the noiseless sentinel.
    std::vector<double> parse_snr_list(std::string_view text);

    // One key=value setting; throws ConfigError on unknown keys or bad values.
    void apply_setting(ExperimentSpec &spec, std::string_view key, std::string_view value);

    // key = value lines, '#' comments, blank lines ignored.
    void apply_config_text(ExperimentSpec &spec, std::string_view text, std::string_view origin = "<text>");
    void apply_config_file(ExperimentSpec &spec, const std::filesystem::path &path);

    std::vector<std::string> profile_names();
    ExperimentSpec profile(std::string_view name);
}

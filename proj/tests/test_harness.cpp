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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include "faim/harness.hpp"

using namespace faim;
using Catch::Approx;

namespace
{
    ExperimentSpec small_spec()
    {
        ExperimentSpec s = profile("fig4-a");
        s.snr_db = {64, 68};
        s.min_bit_errors = 60;
        s.max_trials = 3000;
        s.batch_size = 64;
        return s;
    }

    std::string csv_of(const BerCurve &c)
    {
        std::ostringstream os;
        write_csv(ber_table(std::span<const BerCurve>(&c, 1)), os);
        return os.str();
    }
}

TEST_CASE("SNR conversion and parsing")
{
    CHECK(snr_to_n0(30) == Approx(1e-3).epsilon(1e-14));
    CHECK(snr_to_n0(std::numeric_limits<double>::infinity()) == 0.0);
    CHECK(parse_snr_list("62:4:70") == std::vector<double>{62, 66, 70});
    CHECK(parse_snr_list("1, 2.5,inf") == std::vector<double>{1, 2.5, std::numeric_limits<double>::infinity()});
    CHECK(parse_snr_list("0:0.1:0.3").size() == 4);
    CHECK_THROWS_AS(parse_snr_list(""), ConfigError);
    CHECK_THROWS_AS(parse_snr_list("1,,2"), ConfigError);
    CHECK_THROWS_AS(parse_snr_list("abc"), ConfigError);
    CHECK_THROWS_AS(parse_snr_list("5:1:1"), ConfigError);
    CHECK_THROWS_AS(parse_snr_list("1:0:5"), ConfigError);
    CHECK_THROWS_AS(parse_snr_list("1:2"), ConfigError);
}

TEST_CASE("configuration settings and errors")
{
    ExperimentSpec s = profile("fig4-a");
    apply_config_text(s, "# comment\n\nnt = 1\nm=16\n detector = sbl \nprune = 2,1\nsnr = 70\nxi=0.05\n");
    CHECK(s.config.nt == 1);
    CHECK(s.config.modulation_order == 16);
    CHECK(s.detector == DetectorKind::sbl);
    CHECK(s.schedule.prune_counts == std::vector<int>{2, 1});
    CHECK(s.snr_db == std::vector<double>{70});
    CHECK(s.xi == 0.05);
    apply_setting(s, "prune", "none");
    CHECK(s.schedule.prune_counts.empty());

    CHECK_THROWS_AS(apply_setting(s, "bogus", "1"), ConfigError);
    CHECK_THROWS_AS(apply_setting(s, "nt", "two"), ConfigError);
    CHECK_THROWS_AS(apply_setting(s, "nt", "2.5"), ConfigError);
    CHECK_THROWS_AS(apply_setting(s, "prm", "dense"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(s, "nt 2\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_file(s, "/nonexistent/faim.cfg"), ConfigError);
    CHECK_THROWS_AS(profile("fig99"), ConfigError);
    CHECK_THROWS_AS(parse_codebook("optimal"), ConfigError);
    CHECK_THROWS_AS(parse_scheme("sm"), ConfigError);

    ExperimentSpec bad = profile("fig4-a");
    bad.xi = 1.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = profile("fig4-a");
    bad.snr_db.clear();
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = profile("fig4-a");
    bad.config.modulation_order = 8;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = profile("fig4-a");
    bad.scheme = Scheme::fa_vblast;
    bad.detector = DetectorKind::sbl;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = profile("fig4-a");
    bad.threads = 0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("every profile validates")
{
    for (const std::string &n : profile_names())
    {
        const ExperimentSpec s = profile(n);
        CHECK_NOTHROW(s.validate());
        CHECK(s.name == n);
    }
    CHECK(profile("fig4-a").rate_bits() == 6);
    CHECK(profile("fig6-8bpcu").rate_bits() == 8);
    CHECK(profile("fig6-8bpcu-vblast").rate_bits() == 8);
    CHECK(profile("fig7-csi").rate_bits() == 6);
    CHECK(profile("fig7-csi-vblast").rate_bits() == 6);
    CHECK(profile("fig8-esbl").rate_bits() == 20);
    CHECK(profile("fig8-esbl-27bpcu").rate_bits() == 27);
}

TEST_CASE("same seed gives byte-identical CSV, independent of thread count")
{
    const ExperimentSpec s = small_spec();
    const BerCurve a = run_ber_experiment(s);
    const BerCurve b = run_ber_experiment(s);
    ExperimentSpec t = s;
    t.threads = 3;
    const BerCurve c = run_ber_experiment(t);
    CHECK(csv_of(a) == csv_of(b));
    CHECK(csv_of(a) == csv_of(c));
    CHECK(a.spec_hash == b.spec_hash);

    ExperimentSpec other = s;
    other.seed = 2;
    CHECK(spec_hash(other) != spec_hash(s));
    CHECK(csv_of(run_ber_experiment(other)) != csv_of(a));

    for (const BerPoint &p : a.points)
    {
        CHECK((p.bit_errors >= s.min_bit_errors || p.trials == s.max_trials));
        CHECK(p.ber == Approx(static_cast<double>(p.bit_errors) / (p.trials * 6.0)));
        CHECK(p.trials % s.batch_size == 0);
    }
    CHECK(a.points[0].ber > a.points[1].ber);
}

TEST_CASE("SNR points come back sorted")
{
    ExperimentSpec s = small_spec();
    s.snr_db = {68, 64};
    const BerCurve c = run_ber_experiment(s);
    REQUIRE(c.points.size() == 2);
    CHECK(c.points[0].snr_db == 64);
    CHECK(c.points[1].snr_db == 68);
}

TEST_CASE("common random numbers across SNR points")
{
    const ExperimentSpec s = small_spec();
    const Codebook cb = experiment_codebook(s);
    const GridGeometry g = make_geometry(s.config);
    // errors at a higher SNR never exceed those at a much lower one on the same draws, on average
    std::uint64_t lo = 0, hi = 0;
    for (std::uint64_t t = 0; t < 400; ++t)
    {
        lo += run_trial(s, g, cb, t, snr_to_n0(60));
        hi += run_trial(s, g, cb, t, snr_to_n0(80));
    }
    CHECK(hi < lo);
    CHECK(run_trial(s, g, cb, 17, snr_to_n0(64)) == run_trial(s, g, cb, 17, snr_to_n0(64)));
    const Codebook again = experiment_codebook(s);
    CHECK(again.patterns() == cb.patterns());
}

TEST_CASE("noiseless links are error free for every detector and scheme")
{
    const double inf = std::numeric_limits<double>::infinity();
    auto check_zero = [&](ExperimentSpec s)
    {
        s.snr_db = {inf};
        s.min_bit_errors = 1;
        s.max_trials = 128;
        s.batch_size = 64;
        const BerCurve c = s.scheme == Scheme::fa_vblast ? run_vblast_baseline(s) : run_ber_experiment(s);
        REQUIRE(c.points.size() == 1);
        CHECK(c.points[0].bit_errors == 0);
        CHECK(c.points[0].trials == 128);
        CHECK(c.points[0].capped);
    };
    for (DetectorKind d : {DetectorKind::ml, DetectorKind::sbl, DetectorKind::esbl})
        for (CodebookKind k : {CodebookKind::random, CodebookKind::designed})
        {
            ExperimentSpec s = profile("fig4-a");
            s.detector = d;
            s.codebook = k;
            if (d == DetectorKind::esbl)
                s.schedule.prune_counts = {1};
            check_zero(s);
        }
    check_zero(profile("fig8-esbl"));
    check_zero(profile("fig6-8bpcu-vblast"));
    ExperimentSpec corner = profile("fig7-csi-vblast");
    corner.xi = 0.0;
    corner.placement = VblastPlacement::fixed_corner;
    check_zero(corner);
}

TEST_CASE("CSV formatting and round trip")
{
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1048576000.0) == "1048576000");
    CHECK(format_double(1.0 / 3.0) == "0.333333333333");

    BerCurve empty;
    std::ostringstream os;
    write_csv(ber_table(std::span<const BerCurve>(&empty, 1)), os);
    CHECK(os.str() == "scheme,detector,codebook,snr_db,xi,trials,bit_errors,ber,seed\n");

    const std::vector<ComplexityRow> rows = run_complexity_table(default_complexity_cases());
    const CsvTable t = complexity_table(rows);
    CHECK(t.header == std::vector<std::string>{"nt", "nr", "p", "m", "detector", "flops"});
    const auto path = std::filesystem::temp_directory_path() / "faim_test_roundtrip.csv";
    emit_csv(t, path);
    const CsvTable back = read_csv(path);
    std::filesystem::remove(path);
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
    CHECK_THROWS(emit_csv(t, "/nonexistent-dir/x.csv"));
}

TEST_CASE("complexity table")
{
    const std::vector<ComplexityRow> rows = run_complexity_table(default_complexity_cases());
    REQUIRE(rows.size() == 9);
    CHECK(rows[0].detector == "ml");
    CHECK(rows[0].flops == 1048576000.0);
    for (std::size_t i = 0; i < rows.size(); i += 3)
    {
        CHECK(rows[i + 1].detector == "sbl");
        CHECK(rows[i + 2].detector == "esbl");
        CHECK(rows[i + 2].flops < 0.8 * rows[i + 1].flops);
        CHECK(rows[i + 1].flops < rows[i].flops);
    }
}

TEST_CASE("spectral efficiency sweep")
{
    const std::vector<int> nts{1, 2, 4, 6};
    const std::vector<int> ps{4, 20};
    const std::vector<SeRow> rows = run_se_sweep(nts, ps, 4);
    int fa_im = 0;
    for (const SeRow &r : rows)
    {
        if (r.scheme == "fa-im")
        {
            ++fa_im;
            CHECK(r.p >= r.nt);
            CHECK(r.se == se_fa_im(r.nt, r.p, 4));
        }
        else if (r.scheme == "fa-vblast")
            CHECK(r.se == 2.0 * r.nt);
        else
        {
            CHECK(r.scheme == "sm-mimo");
            CHECK(r.se == Approx(2.0 + std::log2(r.nt)));
        }
    }
    // P = 4 admits Nt = 1, 2, 4; P = 20 admits all four
    CHECK(fa_im == 7);
    const std::vector<int> bad{0};
    CHECK_THROWS_AS(run_se_sweep(bad, ps, 4), ConfigError);
}

TEST_CASE("ABEP curve rows")
{
    ExperimentSpec s = profile("fig4-a");
    s.snr_db = {70, 60};
    UpepModel m;
    m.geometry_samples = 5;
    const std::vector<AbepRow> rows = run_abep_curve(s, m);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].snr_db == 60);
    CHECK(rows[0].bound > rows[1].bound);
    CHECK(rows[0].model == "finite");
    s.snr_db = {std::numeric_limits<double>::infinity()};
    CHECK_THROWS_AS(run_abep_curve(s, m), ConfigError);
    m.kind = ChannelModelKind::infinite_path;
    m.form = UpepForm::scalar_gap;
    CHECK(upep_model_name(m) == "infinite-scalar");
}

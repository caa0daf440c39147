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

#include <algorithm>
#include <cmath>

#include "faim/channel.hpp"
#include "faim/detect.hpp"
#include "faim/rng.hpp"
#include "oracles.hpp"

using namespace faim;
using Catch::Approx;

namespace
{
    CMatrix gaussian(int rows, int cols, Rng &rng, double var = 1.0)
    {
        CMatrix h(rows, cols);
        for (Eigen::Index i = 0; i < h.size(); ++i)
            h.data()[i] = complex_normal(rng, var);
        return h;
    }

    double rel_err(Complex a, Complex b, double scale) { return std::abs(a - b) / scale; }
}

TEST_CASE("ML argmin equals the exhaustive table")
{
    Rng rng = derive_rng(2024, {});
    for (int inst = 0; inst < 200; ++inst)
    {
        const int nt = 1 + static_cast<int>(rng() % 2);
        const int p = nt + 1 + static_cast<int>(rng() % 3);
        const int m = nt == 1 ? 16 : 4;
        const int nr = 1 + static_cast<int>(rng() % 4);
        const Codebook cb = random_codebook(p, nt, rng);
        const Constellation &con = constellation(m);
        const CMatrix h = gaussian(nr, p, rng);
        const CVector y = gaussian(nr, 1, rng, 2.0);
        const DetectionResult r = ml_detect(y, h, cb, con);
        const oracle::MlWinner w = oracle::ml_exhaustive(y, h, cb, con);
        CHECK(r.codebook_entry == w.entry);
        CHECK(r.labels == w.labels);
        CHECK(r.metric == Approx(w.metric).epsilon(1e-10));
        CHECK(r.pattern == cb.pattern(w.entry));
    }
}

TEST_CASE("ML ties keep the first hypothesis in enumeration order")
{
    const Codebook cb = canonical_codebook(4, 2);
    const CMatrix h = CMatrix::Zero(2, 4);
    const CVector y = CVector::Ones(2);
    const DetectionResult r = ml_detect(y, h, cb, constellation(4));
    CHECK(r.codebook_entry == 0);
    CHECK(r.labels == std::vector<unsigned>{0, 0});
}

TEST_CASE("ML hypothesis guard")
{
    const Codebook cb = canonical_codebook(20, 4);
    const CMatrix h = CMatrix::Ones(4, 20);
    const CVector y = CVector::Ones(4);
    MlOptions o;
    o.max_hypotheses = 1e5;
    CHECK_THROWS_AS(ml_detect(y, h, cb, constellation(4), o), GuardError);
    CHECK_THROWS_AS(ml_detect(CVector::Ones(3), h, cb, constellation(4)), std::invalid_argument);
}

TEST_CASE("ML reports the closed-form flop count")
{
    const Codebook cb = canonical_codebook(4, 2);
    Rng rng = derive_rng(1, {});
    const DetectionResult r = ml_detect(gaussian(4, 1, rng), gaussian(4, 4, rng), cb, constellation(4));
    CHECK(r.diagnostics.flops == 64.0 * (12 * 4 * 2 + 2 * 4));
}

TEST_CASE("SBL update matches the dense information-form posterior")
{
    Rng rng = derive_rng(77, {});
    for (int inst = 0; inst < 200; ++inst)
    {
        const int nr = 1 + static_cast<int>(rng() % 8);
        const int p = 1 + static_cast<int>(rng() % 8);
        const CMatrix h = gaussian(nr, p, rng);
        const CVector y = gaussian(nr, 1, rng);
        const double n0 = std::pow(10.0, -static_cast<double>(rng() % 30) / 10.0);
        SblState s = initial_sbl_state(p);
        std::uniform_real_distribution<double> g(0.05, 3.0);
        for (int i = 0; i < p; ++i)
            s.gamma(i) = g(rng);

        const SblState next = sbl_update(s, y, h, n0);
        const std::vector<double> gamma(s.gamma.data(), s.gamma.data() + p);
        const oracle::SblPosterior o = oracle::sbl_posterior(h, y, gamma, n0);

        double mu_scale = 1e-300, sigma_scale = 1e-300;
        for (int i = 0; i < p; ++i)
        {
            mu_scale = std::max(mu_scale, std::abs(o.mu[static_cast<std::size_t>(i)]));
            for (int j = 0; j < p; ++j)
                sigma_scale = std::max(sigma_scale, std::abs(o.sigma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
        }
        for (int i = 0; i < p; ++i)
        {
            CHECK(rel_err(next.mu(i), o.mu[static_cast<std::size_t>(i)], mu_scale) < 1e-10);
            for (int j = 0; j < p; ++j)
                CHECK(rel_err(next.sigma(i, j), o.sigma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                              sigma_scale) < 1e-10);
            CHECK(next.gamma(i) ==
                  Approx(std::norm(next.mu(i)) + next.sigma(i, i).real()).epsilon(1e-14));
        }
        CHECK(next.iteration == 1);
        CHECK(next.candidates == s.candidates);
    }
}

TEST_CASE("SBL update rejects bad inputs")
{
    const SblState s = initial_sbl_state(3);
    CHECK_THROWS_AS(sbl_update(s, CVector::Ones(2), CMatrix::Ones(2, 3), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sbl_update(s, CVector::Ones(2), CMatrix::Ones(2, 4), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(initial_sbl_state(0), std::invalid_argument);
    // Sigma_y = N0 I + H H^H with a huge rank-one term is numerically singular
    CHECK_THROWS_AS(sbl_update(s, CVector::Ones(2), CMatrix::Constant(2, 3, 1e9), 1e-9), ConditioningError);
}

TEST_CASE("pruning schedule validation")
{
    PruningSchedule s;
    s.prune_counts = {2, 2, 2, 2, 2};
    s.max_iterations = 10;
    CHECK_NOTHROW(s.validate(20, 4));
    // 10 survivors is not above P - Nt = 16
    CHECK_THROWS_AS(s.validate(20, 4, true), std::invalid_argument);
    s.prune_counts = {2, 1};
    CHECK_NOTHROW(s.validate(20, 4, true));
    s.prune_counts = {10, 7};
    CHECK_THROWS_AS(s.validate(20, 4), std::invalid_argument);
    s.prune_counts = {2, 0};
    CHECK_THROWS_AS(s.validate(20, 4), std::invalid_argument);
    s.prune_counts = std::vector<int>(11, 1);
    CHECK_THROWS_AS(s.validate(20, 4), std::invalid_argument);
    s.prune_counts.clear();
    s.max_iterations = 0;
    CHECK_THROWS_AS(s.validate(20, 4), std::invalid_argument);
}

TEST_CASE("efficient SBL with an empty schedule reproduces the original trajectory")
{
    Rng rng = derive_rng(5, {});
    const Codebook cb = canonical_codebook(8, 2);
    for (int inst = 0; inst < 20; ++inst)
    {
        const CMatrix h = gaussian(6, 8, rng);
        const CVector y = gaussian(6, 1, rng);
        std::vector<SblState> a, b;
        SblOptions oa, ob;
        oa.trace = &a;
        ob.trace = &b;
        PruningSchedule none;
        none.max_iterations = 10;
        const DetectionResult ra = efficient_sbl_detect(y, h, 0.1, none, cb, constellation(4), oa);
        const DetectionResult rb = original_sbl_detect(y, h, 0.1, 10, cb, constellation(4), ob);
        REQUIRE(a.size() == 10);
        REQUIRE(b.size() == 10);
        for (std::size_t t = 0; t < a.size(); ++t)
        {
            CHECK(a[t].gamma == b[t].gamma);
            CHECK(a[t].mu == b[t].mu);
            CHECK(a[t].candidates == b[t].candidates);
        }
        CHECK(ra.bits == rb.bits);
        CHECK(ra.diagnostics.flops == rb.diagnostics.flops);
    }
}

TEST_CASE("efficient SBL prunes the scheduled number of candidates")
{
    Rng rng = derive_rng(6, {});
    const CMatrix h = gaussian(20, 20, rng);
    const CVector y = gaussian(20, 1, rng);
    Rng cbr = derive_rng(1, {});
    const Codebook cb = random_codebook(20, 4, cbr);
    PruningSchedule s;
    s.prune_counts = {2, 2, 2, 2, 2};
    std::vector<SblState> trace;
    SblOptions o;
    o.trace = &trace;
    const DetectionResult r = efficient_sbl_detect(y, h, 0.5, s, cb, constellation(4), o);
    REQUIRE(trace.size() == 10);
    for (std::size_t t = 0; t < trace.size(); ++t)
    {
        CHECK(trace[t].scale() == static_cast<Eigen::Index>(20 - 2 * std::min<std::size_t>(t + 1, 5)));
        CHECK(std::is_sorted(trace[t].candidates.begin(), trace[t].candidates.end()));
    }
    CHECK(r.diagnostics.final_candidates.size() == 10);
    CHECK(r.diagnostics.flops == Approx(1603420));
    CHECK(r.pattern.size() == 4);
    CHECK(cb.find(r.pattern).has_value());
}

TEST_CASE("efficient SBL recovers a noiseless frame")
{
    for (int m : {2, 4, 16})
    {
        Rng rng = derive_rng(8, {static_cast<std::uint64_t>(m)});
        const CMatrix h = gaussian(20, 20, rng);
        const Codebook cb = design_codebook(h, 4);
        const Constellation &con = constellation(m);
        SystemConfig cfg;
        cfg.p1 = 4;
        cfg.p2 = 5;
        cfg.n1 = 4;
        cfg.n2 = 5;
        cfg.nt = 4;
        cfg.modulation_order = m;
        for (int trial = 0; trial < 20; ++trial)
        {
            const Bits bits = random_bits(static_cast<std::size_t>(cfg.rate_bits()), rng);
            const Frame f = modulate_frame(bits, cfg, cb);
            const CVector y = h * f.x;
            PruningSchedule s;
            s.prune_counts = {2, 2, 2, 2, 2};
            CHECK(efficient_sbl_detect(y, h, 1e-10, s, cb, con).bits == bits);
            CHECK(original_sbl_detect(y, h, 1e-10, 10, cb, con).bits == bits);
            if (m <= 4)
                CHECK(ml_detect(y, h, cb, con).bits == bits);
        }
    }
}

TEST_CASE("off-codebook supports are mapped by gamma mass")
{
    const Codebook cb(4, 2, {{0, 1}, {0, 2}, {0, 3}, {1, 2}}, CodebookKind::random);
    SblState s = initial_sbl_state(4);
    s.gamma << 0.1, 0.9, 0.2, 0.8;
    // {1, 3} is not an entry; with every candidate alive {1, 2} has the largest mass (1.1)
    CHECK(map_to_codebook({1, 3}, s, cb) == 3);
    CHECK(map_to_codebook({0, 2}, s, cb) == 1);

    // an exact match wins regardless of mass
    SblState t;
    t.candidates = {0, 3};
    t.gamma = RVector(2);
    t.gamma << 0.1, 0.8;
    CHECK(map_to_codebook({0, 3}, t, cb) == 2);
    t.candidates = {1, 3};
    t.gamma << 0.9, 0.8;
    // no entry fits inside {1, 3}; {0, 1} and {1, 2} tie on 0.9 overall and the first wins
    CHECK(map_to_codebook({1, 3}, t, cb) == 0);
}

TEST_CASE("SBL detector flags remapped patterns and re-estimates symbols on the codebook pattern")
{
    // columns 1 and 3 carry the signal but {1, 3} is not in the codebook
    const Codebook cb(4, 2, {{0, 1}, {0, 2}, {0, 3}, {1, 2}}, CodebookKind::random);
    CMatrix h = CMatrix::Identity(4, 4);
    CVector y = CVector::Zero(4);
    y(1) = 1.0;
    y(3) = 1.0;
    PruningSchedule none;
    const DetectionResult r = efficient_sbl_detect(y, h, 1e-3, none, cb, constellation(4));
    CHECK(r.raw_pattern == Pattern{1, 3});
    CHECK(r.diagnostics.pattern_remapped);
    CHECK(cb.find(r.pattern).has_value());
    CHECK(r.symbols.size() == 2);
}

TEST_CASE("demap rejects mismatched label counts")
{
    const Codebook cb = canonical_codebook(4, 2);
    CHECK_THROWS_AS(demap({0, 1}, std::vector<unsigned>{0}, cb, constellation(4)), std::invalid_argument);
    CHECK(parse_detector("esbl") == DetectorKind::esbl);
    CHECK(detector_name(DetectorKind::sbl) == "sbl");
    CHECK_THROWS_AS(parse_detector("zf"), std::invalid_argument);
}

TEST_CASE("ill-conditioned updates are retried with diagonal loading")
{
    Rng rng = derive_rng(9, {});
    const CMatrix h = gaussian(8, 8, rng);
    const Codebook cb = canonical_codebook(8, 2);
    SystemConfig cfg;
    cfg.p1 = 2;
    cfg.p2 = 4;
    cfg.n1 = 2;
    cfg.n2 = 4;
    cfg.nt = 2;
    const Bits bits = random_bits(static_cast<std::size_t>(cfg.rate_bits()), rng);
    const Frame f = modulate_frame(bits, cfg, cb);
    const CVector y = h * f.x;
    const DetectionResult r = original_sbl_detect(y, h, 1e-16, 10, cb, constellation(4));
    CHECK(r.diagnostics.loaded);
    CHECK(r.bits == bits);
}

TEST_CASE("the true support survives pruning at high SNR")
{
    Rng rng = derive_rng(10, {});
    SystemConfig cfg;
    cfg.p1 = 4;
    cfg.p2 = 5;
    cfg.n1 = 4;
    cfg.n2 = 5;
    cfg.nt = 4;
    Rng cbr = derive_rng(11, {});
    const Codebook cb = random_codebook(20, 4, cbr);
    PruningSchedule s;
    s.prune_counts = {2, 2, 2, 2, 2};
    int trials = 0, kept = 0;
    while (trials < 1000)
    {
        const CMatrix h = gaussian(20, 20, rng);
        const Bits bits = random_bits(static_cast<std::size_t>(cfg.rate_bits()), rng);
        const Frame f = modulate_frame(bits, cfg, cb);
        const Eigen::JacobiSVD<CMatrix> svd(effective_channel(h, f.pattern));
        if (svd.singularValues().minCoeff() < 0.1)
            continue;
        ++trials;
        const CVector y = transmit(f.x, h, 1e-6, rng);
        const DetectionResult r = efficient_sbl_detect(y, h, 1e-6, s, cb, constellation(4));
        CHECK(r.bits.size() == static_cast<std::size_t>(cfg.rate_bits()));
        const auto &c = r.diagnostics.final_candidates;
        kept += std::includes(c.begin(), c.end(), f.pattern.begin(), f.pattern.end()) ? 1 : 0;
    }
    CHECK(kept >= 990);
}

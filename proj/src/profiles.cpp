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

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "faim/harness.hpp"

namespace faim
{
    namespace
    {
        std::string_view trim(std::string_view s)
        {
            const auto b = s.find_first_not_of(" \t\r\n");
            if (b == std::string_view::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r\n");
            return s.substr(b, e - b + 1);
        }

        double to_double(std::string_view key, std::string_view text)
        {
            text = trim(text);
            if (text == "inf" || text == "+inf")
                return std::numeric_limits<double>::infinity();
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
                throw ConfigError("'" + std::string(key) + "': '" + std::string(text) + "' is not a number");
            return v;
        }

        template <typename T>
        T to_integer(std::string_view key, std::string_view text)
        {
            text = trim(text);
            T v{};
            const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
                throw ConfigError("'" + std::string(key) + "': '" + std::string(text) + "' is not an integer");
            return v;
        }

        std::vector<std::string_view> split(std::string_view s, char sep)
        {
            std::vector<std::string_view> out;
            std::size_t start = 0;
            for (;;)
            {
                const auto pos = s.find(sep, start);
                out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
                if (pos == std::string_view::npos)
                    return out;
                start = pos + 1;
            }
        }

        SystemConfig grid(int nt, int p1, int p2, int n1, int n2, int m, int paths)
        {
            SystemConfig c;
            c.nt = nt;
            c.p1 = p1;
            c.p2 = p2;
            c.n1 = n1;
            c.n2 = n2;
            c.modulation_order = m;
            c.num_paths = paths;
            return c;
        }

        std::vector<double> range(double start, double step, double stop)
        {
            return parse_snr_list(format_double(start) + ":" + format_double(step) + ":" + format_double(stop));
        }
    }

    std::vector<double> parse_snr_list(std::string_view text)
    {
        std::vector<double> out;
        if (trim(text).empty())
            throw ConfigError("empty SNR list");
        for (std::string_view item : split(text, ','))
        {
            if (item.empty())
                throw ConfigError("empty entry in SNR list '" + std::string(text) + "'");
            if (item.find(':') == std::string_view::npos)
            {
                out.push_back(to_double("snr", item));
                continue;
            }
            const auto parts = split(item, ':');
            if (parts.size() != 3)
                throw ConfigError("SNR range '" + std::string(item) + "' must be start:step:stop");
            const double a = to_double("snr", parts[0]), step = to_double("snr", parts[1]),
                         b = to_double("snr", parts[2]);
            if (!std::isfinite(a) || !std::isfinite(b) || !(step > 0.0) || !std::isfinite(step) || b < a)
                throw ConfigError("SNR range '" + std::string(item) + "' needs finite start <= stop and step > 0");
            const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
            if (n > 100000)
                throw ConfigError("SNR range '" + std::string(item) + "' has too many points");
            for (long i = 0; i <= n; ++i)
                out.push_back(a + static_cast<double>(i) * step);
        }
        return out;
    }

    void apply_setting(ExperimentSpec &spec, std::string_view key, std::string_view value)
    {
        key = trim(key);
        value = trim(value);
        SystemConfig &c = spec.config;
        auto as_int = [&] { return to_integer<int>(key, value); };
        auto as_u64 = [&] { return to_integer<std::uint64_t>(key, value); };
        auto as_double = [&] { return to_double(key, value); };

        if (key == "scheme")
            spec.scheme = parse_scheme(value);
        else if (key == "detector")
        {
            try
            {
                spec.detector = parse_detector(value);
            }
            catch (const std::invalid_argument &e)
            {
                throw ConfigError(e.what());
            }
        }
        else if (key == "codebook")
            spec.codebook = parse_codebook(value);
        else if (key == "nt")
            c.nt = as_int();
        else if (key == "p1")
            c.p1 = as_int();
        else if (key == "p2")
            c.p2 = as_int();
        else if (key == "n1")
            c.n1 = as_int();
        else if (key == "n2")
            c.n2 = as_int();
        else if (key == "m")
            c.modulation_order = as_int();
        else if (key == "paths")
            c.num_paths = as_int();
        else if (key == "wavelength")
            c.wavelength = as_double();
        else if (key == "region")
            c.tx_region_wavelengths = as_double();
        else if (key == "rx_spacing")
            c.rx_spacing_wavelengths = as_double();
        else if (key == "c0")
            c.unit_path_loss = as_double();
        else if (key == "distance")
            c.distance = as_double();
        else if (key == "exponent")
            c.path_loss_exponent = as_double();
        else if (key == "prm")
        {
            if (value == "diagonal")
                c.prm_mode = PrmMode::diagonal;
            else if (value == "general")
                c.prm_mode = PrmMode::general;
            else
                throw ConfigError("prm must be diagonal or general");
        }
        else if (key == "snr")
            spec.snr_db = parse_snr_list(value);
        else if (key == "xi")
            spec.xi = as_double();
        else if (key == "min_bit_errors")
            spec.min_bit_errors = as_u64();
        else if (key == "max_trials")
            spec.max_trials = as_u64();
        else if (key == "batch")
            spec.batch_size = as_u64();
        else if (key == "seed")
            spec.seed = as_u64();
        else if (key == "threads")
            spec.threads = as_int();
        else if (key == "t_max")
            spec.schedule.max_iterations = as_int();
        else if (key == "prune")
        {
            spec.schedule.prune_counts.clear();
            if (!value.empty() && value != "none")
                for (std::string_view v : split(value, ','))
                    spec.schedule.prune_counts.push_back(to_integer<int>(key, v));
        }
        else if (key == "placement")
        {
            if (value == "best")
                spec.placement = VblastPlacement::best_norm;
            else if (value == "corner")
                spec.placement = VblastPlacement::fixed_corner;
            else
                throw ConfigError("placement must be best or corner");
        }
        else if (key == "max_hypotheses")
            spec.max_hypotheses = as_double();
        else if (key == "name")
            spec.name = std::string(value);
        else
            throw ConfigError("unknown setting '" + std::string(key) + "'");
    }

    void apply_config_text(ExperimentSpec &spec, std::string_view text, std::string_view origin)
    {
        std::size_t line_no = 0;
        for (std::string_view line : split(text, '\n'))
        {
            ++line_no;
            const auto hash = line.find('#');
            line = trim(line.substr(0, hash));
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) + ": expected key = value");
            try
            {
                apply_setting(spec, line.substr(0, eq), line.substr(eq + 1));
            }
            catch (const ConfigError &e)
            {
                throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) + ": " + e.what());
            }
        }
    }

    void apply_config_file(ExperimentSpec &spec, const std::filesystem::path &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw ConfigError("cannot read config file '" + path.string() + "'");
        std::ostringstream ss;
        ss << f.rdbuf();
        apply_config_text(spec, ss.str(), path.string());
    }

    std::vector<std::string> profile_names()
    {
        return {"fig4-a",     "fig5-a",          "fig6-8bpcu", "fig6-8bpcu-vblast",
                "fig7-csi",   "fig7-csi-vblast", "fig8-esbl",  "fig8-esbl-27bpcu"};
    }

    ExperimentSpec profile(std::string_view name)
    {
        ExperimentSpec s;
        s.name = std::string(name);
        s.schedule.max_iterations = 10;
        if (name == "fig4-a")
        {
            s.config = grid(2, 2, 2, 2, 2, 4, 15);
            s.snr_db = range(62, 4, 90);
        }
        else if (name == "fig5-a")
        {
            s.config = grid(2, 2, 2, 2, 2, 4, 30);
            s.codebook = CodebookKind::designed;
            s.snr_db = range(62, 4, 90);
        }
        else if (name == "fig6-8bpcu")
        {
            s.config = grid(3, 2, 4, 2, 2, 2, 15);
            s.codebook = CodebookKind::designed;
            s.snr_db = range(62, 4, 90);
        }
        else if (name == "fig6-8bpcu-vblast")
        {
            s.scheme = Scheme::fa_vblast;
            s.config = grid(4, 2, 4, 2, 2, 4, 15);
            s.snr_db = range(62, 4, 90);
        }
        else if (name == "fig7-csi")
        {
            s.config = grid(2, 2, 2, 2, 2, 4, 15);
            s.codebook = CodebookKind::designed;
            s.xi = 0.1;
            s.snr_db = range(62, 4, 90);
        }
        else if (name == "fig7-csi-vblast")
        {
            s.scheme = Scheme::fa_vblast;
            s.config = grid(3, 2, 2, 2, 2, 4, 15);
            s.xi = 0.1;
            s.snr_db = range(62, 4, 90);
        }
        else if (name == "fig8-esbl" || name == "fig8-esbl-27bpcu")
        {
            s.config = grid(name == "fig8-esbl" ? 4 : 6, 4, 5, 4, 5, 4, 15);
            s.detector = DetectorKind::esbl;
            s.codebook = CodebookKind::designed;
            s.schedule.prune_counts = {2, 2, 2, 2, 2};
            s.snr_db = range(62, 4, 86);
        }
        else
        {
            std::string known;
            for (const auto &n : profile_names())
                known += (known.empty() ? "" : ", ") + n;
            throw ConfigError("unknown profile '" + std::string(name) + "' (known: " + known + ")");
        }
        return s;
    }
}

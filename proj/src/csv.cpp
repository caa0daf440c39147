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

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "faim/harness.hpp"

namespace faim
{
    std::string format_double(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return buf;
    }

    CsvTable ber_table(std::span<const BerCurve> curves)
    {
        CsvTable t{{"scheme", "detector", "codebook", "snr_db", "xi", "trials", "bit_errors", "ber", "seed"}, {}};
        for (const BerCurve &c : curves)
            for (const BerPoint &p : c.points)
                t.rows.push_back({std::string(scheme_name(c.scheme)), std::string(detector_name(c.detector)),
                                  std::string(codebook_name(c.codebook)), format_double(p.snr_db),
                                  format_double(c.xi), std::to_string(p.trials), std::to_string(p.bit_errors),
                                  format_double(p.ber), std::to_string(c.seed)});
        return t;
    }

    CsvTable se_table(std::span<const SeRow> rows)
    {
        CsvTable t{{"nt", "scheme", "p", "se"}, {}};
        for (const SeRow &r : rows)
            t.rows.push_back({std::to_string(r.nt), r.scheme, std::to_string(r.p), format_double(r.se)});
        return t;
    }

    CsvTable complexity_table(std::span<const ComplexityRow> rows)
    {
        CsvTable t{{"nt", "nr", "p", "m", "detector", "flops"}, {}};
        for (const ComplexityRow &r : rows)
            t.rows.push_back({std::to_string(r.nt), std::to_string(r.nr), std::to_string(r.p), std::to_string(r.m),
                              r.detector, format_double(r.flops)});
        return t;
    }

    CsvTable abep_table(std::span<const AbepRow> rows)
    {
        CsvTable t{{"snr_db", "bound", "model"}, {}};
        for (const AbepRow &r : rows)
            t.rows.push_back({format_double(r.snr_db), format_double(r.bound), r.model});
        return t;
    }

    namespace
    {
        void write_row(const std::vector<std::string> &row, std::ostream &out)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
            {
                if (i)
                    out << ',';
                out << row[i];
            }
            out << '\n';
        }
    }

    void write_csv(const CsvTable &table, std::ostream &out)
    {
        write_row(table.header, out);
        for (const auto &r : table.rows)
            write_row(r, out);
    }

    void emit_csv(const CsvTable &table, const std::filesystem::path &path)
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("cannot open '" + path.string() + "' for writing: " + std::strerror(errno));
        write_csv(table, f);
        f.flush();
        if (!f)
            throw std::runtime_error("write to '" + path.string() + "' failed");
    }

    CsvTable read_csv(const std::filesystem::path &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot open '" + path.string() + "' for reading: " + std::strerror(errno));
        CsvTable t;
        std::string line;
        bool first = true;
        while (std::getline(f, line))
        {
            std::vector<std::string> cells;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ','))
                cells.push_back(cell);
            if (first)
                t.header = std::move(cells);
            else
                t.rows.push_back(std::move(cells));
            first = false;
        }
        return t;
    }
}

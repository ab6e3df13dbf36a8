/**
 * Copyright 2026 The earate Authors
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
 */

// Structural reading of level-set CSV output, shared by the unit and
// acceptance tests. Values are compared through masks and orderings only.

#ifndef EARATE_TESTS_LEVELSET_STRUCTURE_HPP
#define EARATE_TESTS_LEVELSET_STRUCTURE_HPP

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace levelset_structure {

struct Table {
    std::vector<std::string> header;
    std::vector<std::map<std::string, std::string>> rows;
};

inline std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

inline Table parse(const std::string& text) {
    Table t;
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) {
        return t;
    }
    t.header = split(line);
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        const auto cells = split(line);
        std::map<std::string, std::string> row;
        for (std::size_t i = 0; i < t.header.size(); ++i) {
            row[t.header[i]] = i < cells.size() ? cells[i] : "";
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline Table load(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

inline double num(const std::string& s) { return std::stod(s); }

// Differences in grid, masks and pairwise orderings between two tables.
inline std::vector<std::string> compare(const Table& golden, const Table& fresh) {
    std::vector<std::string> issues;
    if (golden.header != fresh.header) {
        issues.push_back("column sets differ");
        return issues;
    }
    if (golden.rows.size() != fresh.rows.size()) {
        issues.push_back("row counts differ");
        return issues;
    }
    for (std::size_t i = 0; i < golden.rows.size(); ++i) {
        const auto& g = golden.rows[i];
        const auto& f = fresh.rows[i];
        for (const char* axis : {"eta", "n_s", "n_t"}) {
            if (std::abs(num(g.at(axis)) - num(f.at(axis))) > 1e-12 * std::abs(num(g.at(axis)))) {
                issues.push_back("row " + std::to_string(i) + ": grid coordinate " + axis);
            }
        }
        for (const auto& col : golden.header) {
            const bool flag = col.ends_with("_reason") || col == "lemma1_valid" || col == "nt_gt_eta";
            if (flag && g.at(col) != f.at(col)) {
                issues.push_back("row " + std::to_string(i) + ": " + col + " " + g.at(col) + " -> " + f.at(col));
            }
        }
        const auto order = [](const std::map<std::string, std::string>& r) {
            if (r.at("ratio_psk").empty() || r.at("ratio_optimal").empty()) {
                return 0;
            }
            return num(r.at("ratio_psk")) <= num(r.at("ratio_optimal")) ? 1 : 2;
        };
        if (order(g) != order(f)) {
            issues.push_back("row " + std::to_string(i) + ": ratio ordering changed");
        }
    }
    return issues;
}

struct Properties {
    std::size_t mask_mismatch = 0;     ///< masked iff outside the validity conditions
    bool masked_at_small_nt = true;    ///< smallest n_t column masked, masks contiguous from below
    std::size_t psk_above_optimal = 0;
    std::size_t optimal_not_increasing = 0;  ///< as n_s decreases at fixed n_t
};

inline Properties properties(const Table& t) {
    Properties p;
    std::map<double, std::map<double, const std::map<std::string, std::string>*>> by_nt;
    for (const auto& r : t.rows) {
        const bool masked = !r.at("ratio_psk_reason").empty();
        const bool expect = r.at("lemma1_valid") == "false" || r.at("nt_gt_eta") == "false";
        p.mask_mismatch += masked != expect;
        if (!r.at("ratio_psk").empty() && !r.at("ratio_optimal").empty() &&
            num(r.at("ratio_psk")) > num(r.at("ratio_optimal"))) {
            ++p.psk_above_optimal;
        }
        by_nt[num(r.at("n_t"))][num(r.at("n_s"))] = &r;
    }
    // by_ns for mask contiguity
    std::map<double, std::vector<bool>> masks_by_ns;
    for (const auto& [nt, col] : by_nt) {
        const std::map<std::string, std::string>* prev = nullptr;
        for (const auto& [ns, row] : col) {
            masks_by_ns[ns].push_back(!row->at("ratio_psk_reason").empty());
            if (prev && !prev->at("ratio_optimal").empty() && !row->at("ratio_optimal").empty() &&
                !(num(prev->at("ratio_optimal")) > num(row->at("ratio_optimal")))) {
                ++p.optimal_not_increasing;
            }
            prev = row;
        }
    }
    for (const auto& [ns, masks] : masks_by_ns) {
        if (masks.empty() || !masks.front()) {
            p.masked_at_small_nt = false;
        }
        for (std::size_t j = 1; j < masks.size(); ++j) {
            if (masks[j] && !masks[j - 1]) {
                p.masked_at_small_nt = false;
            }
        }
    }
    return p;
}

}  // namespace levelset_structure

#endif

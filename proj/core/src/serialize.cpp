/*
   Copyright 2026 the knormal authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "knormal/serialize.hpp"

#include <numeric>
#include <sstream>

#include "json.hpp"

namespace knormal {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json tower_json(const TowerDesc& d) {
    ordered_json j;
    j["p"] = d.p;
    j["s"] = d.s;
    j["m"] = d.m;
    j["f"] = d.f;
    j["g"] = d.g;
    j["seed"] = d.seed;
    return j;
}

TowerDesc tower_from(const ordered_json& j) {
    TowerDesc d;
    d.p = j.at("p").get<u64>();
    d.s = j.at("s").get<u32>();
    d.m = j.at("m").get<u32>();
    d.f = j.at("f").get<std::vector<u64>>();
    d.g = j.at("g").get<std::vector<u64>>();
    d.seed = j.at("seed").get<u64>();
    return d;
}

ordered_json existence_json(const ExistenceVerdict& v) {
    ordered_json j;
    j["d"] = v.d;
    if (v.b)
        j["b"] = *v.b;
    else
        j["b"] = nullptr;
    ordered_json per_k = ordered_json::array();
    for (ExistTag t : v.per_k) per_k.push_back(exist_tag_name(t));
    j["per_k"] = per_k;
    return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string poly_serialize(const std::vector<u64>& indices) {
    std::string out = "[";
    for (size_t i = 0; i < indices.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(indices[i]);
    }
    return out + "]";
}

std::vector<u64> poly_parse(std::string_view text) {
    std::vector<u64> out;
    size_t pos = 0, end = text.size();
    while (pos < end && (text[pos] == '[' || text[pos] == ' ')) ++pos;
    while (end > pos && (text[end - 1] == ']' || text[end - 1] == ' ')) --end;
    std::string body(text.substr(pos, end - pos));
    if (body.empty()) return out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t idx = 0;
        u64 v = std::stoull(item, &idx);
        while (idx < item.size() && item[idx] == ' ') ++idx;
        if (idx != item.size()) throw ValidationError("bad polynomial literal: " + std::string(text));
        out.push_back(v);
    }
    return out;
}

std::string poly_pretty(const std::vector<u64>& indices) {
    if (indices.empty()) return "0";
    std::string out;
    for (size_t i = indices.size(); i-- > 0;) {
        u64 c = indices[i];
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(c);
        } else {
            if (c != 1) out += std::to_string(c);
            out += "x";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

std::string factorization_pretty(const FqCtx& fq, const Factorization& fact) {
    if (fact.entries.empty()) return "1";
    FqView fv{&fq};
    std::string out;
    for (const auto& e : fact.entries) {
        if (!out.empty()) out += " * ";
        out += "(" + poly_pretty(poly_indices(fv, e.poly)) + ")";
        if (e.mult > 1) out += "^" + std::to_string(e.mult);
    }
    return out;
}

std::string factorization_to_json(const FqCtx& fq, const Factorization& fact) {
    FqView fv{&fq};
    ordered_json j = ordered_json::array();
    for (const auto& e : fact.entries) {
        ordered_json entry;
        entry["poly"] = poly_serialize(poly_indices(fv, e.poly));
        entry["mult"] = e.mult;
        j.push_back(entry);
    }
    return dump(j);
}

std::string render_bound(u64 num, u64 den) {
    u64 g = std::gcd(num, den == 0 ? 1 : den);
    num /= g;
    den /= g;
    if (den == 1) return std::to_string(num);
    u128 scaled = u128(num) * 1000;
    if (scaled % den == 0) {
        u64 v = static_cast<u64>(scaled / den);
        u64 whole = v / 1000, frac = v % 1000;
        std::string fs = std::to_string(frac);
        fs.insert(0, 3 - fs.size(), '0');
        while (fs.size() > 1 && fs.back() == '0') fs.pop_back();
        return std::to_string(whole) + "." + fs;
    }
    // Round half up to two places. Exact ties land in the terminating branch
    // above, so the rounding here is never ambiguous.
    u128 r = (u128(num) * 200 + den) / (u128(den) * 2);
    u64 v = static_cast<u64>(r);
    std::string fs = std::to_string(v % 100);
    fs.insert(0, 2 - fs.size(), '0');
    return std::to_string(v / 100) + "." + fs;
}

std::string tower_to_json(const TowerDesc& desc) { return dump(tower_json(desc)); }

TowerDesc tower_from_json(const std::string& text) {
    return tower_from(ordered_json::parse(text));
}

std::string exist_tag_name(ExistTag tag) {
    switch (tag) {
        case ExistTag::None: return "none";
        case ExistTag::Always: return "always";
        case ExistTag::Divides: return "divides";
        case ExistTag::Gcd: return "gcd";
        case ExistTag::Reis: return "reis";
    }
    return "none";
}

std::string existence_to_json(const ExistenceVerdict& v) {
    ordered_json j;
    j["q"] = v.q;
    j["m"] = v.m;
    j["existence"] = existence_json(v);
    return dump(j);
}

std::string existence_to_markdown(const ExistenceVerdict& v) {
    std::ostringstream os;
    os << "# Existence guarantees for GF(" << v.q << "^" << v.m << ") over GF(" << v.q << ")\n\n";
    os << "d = gcd(q^m - 1, m) = " << v.d << "\n";
    if (v.b)
        os << "b = largest prime dividing m but not q^m - 1 = " << *v.b << "\n";
    else
        os << "b = (none: every prime of m divides q^m - 1)\n";
    os << "\n| k | guaranteed | via |\n|--:|:--|:--|\n";
    for (u32 k = 0; k < v.per_k.size(); ++k) {
        bool ok = v.per_k[k] != ExistTag::None;
        os << "| " << k << " | " << (ok ? "yes" : "open") << " | "
           << (ok ? exist_tag_name(v.per_k[k]) : "-") << " |\n";
    }
    return os.str();
}

namespace {

ordered_json bound_row_json(const BoundEvaluation& b) {
    ordered_json row;
    row["k"] = b.k;
    row["count"] = b.formula_count;
    row["bound_num"] = b.bound_num;
    row["bound_den"] = b.bound_den;
    row["divisor_count"] = b.divisor_count;
    return row;
}

}  // namespace

std::string bounds_to_json(const std::vector<BoundEvaluation>& rows) {
    ordered_json j = ordered_json::array();
    for (const auto& b : rows) j.push_back(bound_row_json(b));
    return dump(j);
}

std::string bounds_to_markdown(const std::vector<BoundEvaluation>& rows) {
    std::ostringstream os;
    os << "| k | count | phi_q(x^m-1)/q^k | divisors of degree m-k |\n";
    os << "|--:|--:|--:|--:|\n";
    for (const auto& b : rows)
        os << "| " << b.k << " | " << b.formula_count << " | "
           << render_bound(b.bound_num, b.bound_den) << " | " << b.divisor_count << " |\n";
    return os.str();
}

std::string bounds_to_csv(const std::vector<BoundEvaluation>& rows) {
    std::ostringstream os;
    os << "k,count,bound,divisor_count\n";
    for (const auto& b : rows)
        os << b.k << "," << b.formula_count << "," << render_bound(b.bound_num, b.bound_den) << ","
           << b.divisor_count << "\n";
    return os.str();
}

std::string census_to_json(const CensusReport& rep, bool include_timings) {
    ordered_json j;
    j["tower"] = tower_json(rep.tower);
    j["counts"] = rep.counts;
    j["formula_counts"] = rep.formula_counts;
    ordered_json bounds = ordered_json::array();
    for (const auto& b : rep.bounds) bounds.push_back(bound_row_json(b));
    j["bounds"] = bounds;
    j["existence"] = existence_json(rep.existence);
    j["primitive_normal"] = rep.primitive_normal;
    j["q1_primitive_normal"] = rep.q1_primitive_normal;
    if (include_timings) {
        j["elapsed_ms"] = rep.elapsed_ms;
        j["workers"] = rep.workers;
    }
    return dump(j);
}

CensusReport census_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    CensusReport rep;
    rep.tower = tower_from(j.at("tower"));
    rep.m = rep.tower.m;
    rep.q = 1;
    for (u32 i = 0; i < rep.tower.s; ++i) rep.q *= rep.tower.p;
    rep.counts = j.at("counts").get<std::vector<u64>>();
    rep.formula_counts = j.at("formula_counts").get<std::vector<u64>>();
    for (const auto& row : j.at("bounds")) {
        BoundEvaluation b;
        b.q = rep.q;
        b.m = rep.m;
        b.k = row.at("k").get<u32>();
        b.formula_count = row.at("count").get<u64>();
        b.bound_num = row.at("bound_num").get<u64>();
        b.bound_den = row.at("bound_den").get<u64>();
        b.divisor_count = row.at("divisor_count").get<u64>();
        rep.bounds.push_back(b);
    }
    const auto& ex = j.at("existence");
    rep.existence.q = rep.q;
    rep.existence.m = rep.m;
    rep.existence.d = ex.at("d").get<u64>();
    if (!ex.at("b").is_null()) rep.existence.b = ex.at("b").get<u64>();
    for (const auto& tag : ex.at("per_k")) {
        std::string name = tag.get<std::string>();
        ExistTag t = ExistTag::None;
        if (name == "always") t = ExistTag::Always;
        else if (name == "divides") t = ExistTag::Divides;
        else if (name == "gcd") t = ExistTag::Gcd;
        else if (name == "reis") t = ExistTag::Reis;
        rep.existence.per_k.push_back(t);
    }
    rep.primitive_normal = j.at("primitive_normal").get<u64>();
    rep.q1_primitive_normal = j.at("q1_primitive_normal").get<u64>();
    rep.elapsed_ms = j.value("elapsed_ms", u64(0));
    rep.workers = j.value("workers", u32(1));
    return rep;
}

std::string census_to_markdown(const CensusReport& rep) {
    std::ostringstream os;
    u64 size = 1;
    for (u32 i = 0; i < rep.m; ++i) size *= rep.q;
    os << "# GF(" << size << ") over GF(" << rep.q << ")  (q = " << rep.q << ", m = " << rep.m
       << ")\n\n";
    os << "| k | k-normal elements | phi_q(x^m-1)/q^k |\n|--:|--:|--:|\n";
    for (u32 k = 0; k <= rep.m; ++k)
        os << "| " << k << " | " << rep.counts[k] << " | "
           << render_bound(rep.bounds[k].bound_num, rep.bounds[k].bound_den) << " |\n";
    os << "\n(q-1)-primitive normal elements: " << rep.q1_primitive_normal << "\n";
    os << "primitive normal elements: " << rep.primitive_normal << "\n";
    return os.str();
}

std::string census_to_csv(const CensusReport& rep) {
    std::ostringstream os;
    os << "k,count,bound\n";
    for (u32 k = 0; k <= rep.m; ++k)
        os << k << "," << rep.counts[k] << ","
           << render_bound(rep.bounds[k].bound_num, rep.bounds[k].bound_den) << "\n";
    os << "# (q-1)-primitive normal elements: " << rep.q1_primitive_normal << "\n";
    os << "# primitive normal elements: " << rep.primitive_normal << "\n";
    return os.str();
}

namespace {

ordered_json fq_matrix_json(const FqCtx& fq, const std::vector<std::vector<FqElem>>& m) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : m) {
        ordered_json r = ordered_json::array();
        for (const auto& e : row) r.push_back(fq.index_of(e));
        rows.push_back(r);
    }
    return rows;
}

void fq_matrix_markdown(std::ostringstream& os, const FqCtx& fq,
                        const std::vector<std::vector<FqElem>>& m) {
    for (const auto& row : m) {
        os << "|";
        for (const auto& e : row) os << " " << fq.index_of(e) << " |";
        os << "\n";
    }
}

}  // namespace

std::string normal_basis_to_json(const TowerCtx& ctx, const NormalBasis& nb, const MultTable& mt) {
    ordered_json j;
    j["generator"] = ctx.index_of(nb.generator);
    j["basis_matrix"] = fq_matrix_json(ctx.fq(), nb.basis_matrix);
    j["mult_table"] = fq_matrix_json(ctx.fq(), mt.t);
    j["density"] = mt.density;
    return dump(j);
}

std::string normal_basis_to_markdown(const TowerCtx& ctx, const NormalBasis& nb,
                                     const MultTable& mt) {
    std::ostringstream os;
    os << "# Normal basis generated by element " << ctx.index_of(nb.generator) << " of GF("
       << ctx.field_size() << ")\n\n";
    os << "Basis matrix (column i = coordinates of generator^(q^i)):\n\n";
    fq_matrix_markdown(os, ctx.fq(), nb.basis_matrix);
    os << "\nMultiplication table (row i expands generator * generator^(q^i)):\n\n";
    fq_matrix_markdown(os, ctx.fq(), mt.t);
    os << "\ndensity: " << mt.density << "\n";
    return os.str();
}

}  // namespace knormal

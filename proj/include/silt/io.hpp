#pragma once

// Project file loading/saving and report serialization. All coefficients are
// decimal strings; validation errors name the offending JSON path.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "silt/suite.hpp"

namespace silt {

using json = nlohmann::json;

namespace iodetail {

inline const json& need(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key))
        throw usage_error(path + ": missing required key '" + key + "'");
    return j.at(key);
}

inline std::string coeff_string(const json& j, const std::string& path) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<int64_t>());
    throw usage_error(path + ": coefficient must be a decimal string");
}

}  // namespace iodetail

inline Field parse_field(const json& j) {
    std::string type = iodetail::need(j, "type", "field").get<std::string>();
    if (type == "Fp") return Field::fp(iodetail::need(j, "p", "field").get<int64_t>());
    if (type == "Q") return Field::rationals();
    throw usage_error("field.type: expected 'Fp' or 'Q', got '" + type + "'");
}

inline Quiver parse_quiver(const json& j) {
    Quiver q;
    for (auto& v : iodetail::need(j, "vertices", "quiver"))
        q.vertices.push_back(v.get<std::string>());
    if (j.contains("arrows")) {
        std::size_t i = 0;
        for (auto& a : j.at("arrows")) {
            std::string path = "quiver.arrows[" + std::to_string(i++) + "]";
            Arrow arrow;
            arrow.name = iodetail::need(a, "name", path).get<std::string>();
            std::string from = iodetail::need(a, "from", path).get<std::string>();
            std::string to = iodetail::need(a, "to", path).get<std::string>();
            auto find = [&](const std::string& label, const char* key) {
                for (std::size_t t = 0; t < q.vertices.size(); ++t)
                    if (q.vertices[t] == label) return static_cast<int>(t);
                throw usage_error(path + "." + key + ": unknown vertex '" + label + "'");
            };
            arrow.from = find(from, "from");
            arrow.to = find(to, "to");
            q.arrows.push_back(arrow);
        }
    }
    q.validate();
    return q;
}

template <class S>
PathCombo<S> parse_combo(const json& j, const Quiver& q, const Field& fld,
                         const std::string& path, std::optional<int> forced_vertex = {}) {
    PathCombo<S> combo;
    std::size_t i = 0;
    for (auto& term : j) {
        std::string tp = path + "[" + std::to_string(i++) + "]";
        PathTerm<S> t;
        t.coeff = scalar_from_decimal<S>(fld, iodetail::coeff_string(
                                                  iodetail::need(term, "coeff", tp), tp + ".coeff"));
        Path p;
        const json& arrows = iodetail::need(term, "path", tp);
        if (arrows.empty()) {
            if (!forced_vertex)
                throw usage_error(tp + ".path: empty path needs a vertex from context");
            p.start = *forced_vertex;
        } else {
            std::size_t k = 0;
            for (auto& name : arrows) {
                int idx = -1;
                std::string nm = name.get<std::string>();
                for (std::size_t a = 0; a < q.arrows.size(); ++a)
                    if (q.arrows[a].name == nm) idx = static_cast<int>(a);
                if (idx < 0)
                    throw usage_error(tp + ".path[" + std::to_string(k) + "]: unknown arrow '" +
                                      nm + "'");
                if (k == 0) p.start = q.arrows[idx].from;
                else if (q.arrows[p.arrows.back()].to != q.arrows[idx].from)
                    throw usage_error(tp + ".path[" + std::to_string(k) + "]: arrows do not compose");
                p.arrows.push_back(idx);
                ++k;
            }
        }
        t.path = p;
        combo.push_back(t);
    }
    if (combo.empty()) throw usage_error(path + ": empty linear combination");
    return combo;
}

// raw per-file shapes kept for round-tripping
template <class S>
struct RawModule {
    std::vector<Index> dims;                 // per vertex
    std::map<std::string, Mat<S>> arrows;    // arrow name -> d_from x d_to
};

template <class S>
struct RawComplex {
    std::vector<int> pm1, p0;                              // vertex indices
    std::vector<std::vector<PathCombo<S>>> sigma;          // rows = p0, cols = pm1
};

template <class S>
struct Project {
    Field field;
    Quiver quiver;
    std::vector<PathCombo<S>> relations;
    AlgebraPtr<S> algebra;
    std::map<std::string, RawModule<S>> raw_modules;
    std::map<std::string, FdModule<S>> modules;
    std::map<std::string, RawComplex<S>> raw_complexes;
    std::map<std::string, TwoTermComplex<S>> complexes;
    Config cfg;
    Index r_max_dim = 3;
    Index e_max_dim = 3;
    std::vector<std::string> checks;
};

template <class S>
FdModule<S> build_module(const AlgebraPtr<S>& alg, const RawModule<S>& raw,
                         const std::string& path) {
    const Quiver& q = *alg->quiver;
    std::vector<Index> offset(q.vertices.size() + 1, 0);
    for (std::size_t v = 0; v < q.vertices.size(); ++v)
        offset[v + 1] = offset[v] + raw.dims[v];
    Index d = offset.back();
    // arrow block matrices extended to path actions
    std::vector<Mat<S>> arrow_act;
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        Mat<S> m = mat_zero<S>(d, d);
        auto it = raw.arrows.find(q.arrows[a].name);
        Index dr = raw.dims[q.arrows[a].from], dc = raw.dims[q.arrows[a].to];
        if (it != raw.arrows.end()) {
            if (it->second.rows() != dr || it->second.cols() != dc)
                throw usage_error(path + ".arrows." + q.arrows[a].name + ": expected a " +
                                  std::to_string(dr) + "x" + std::to_string(dc) + " matrix");
            m.block(offset[q.arrows[a].from], offset[q.arrows[a].to], dr, dc) = it->second;
        }
        arrow_act.push_back(std::move(m));
    }
    // action of a basis path = vertex projector followed by its arrow actions
    std::vector<Mat<S>> act;
    for (Index k = 0; k < alg->dim(); ++k) {
        const Path& bp = alg->basis_paths.at(k);
        Mat<S> m = mat_zero<S>(d, d);
        for (Index t = offset[bp.start]; t < offset[bp.start + 1]; ++t)
            m(t, t) = FieldOps<S>::from_int(alg->field, 1);
        for (int a : bp.arrows) m = m * arrow_act[a];
        act.push_back(std::move(m));
    }
    try {
        return FdModule<S>(alg, std::move(act));
    } catch (const error& e) {
        throw usage_error(path + ": not a module over this algebra (" + e.what() + ")");
    }
}

template <class S>
Project<S> load_project(const json& j) {
    Project<S> p;
    p.field = parse_field(iodetail::need(j, "field", ""));
    if (!FieldOps<S>::field_matches(p.field))
        throw usage_error("field: scalar instantiation does not match the declared field");
    p.quiver = parse_quiver(iodetail::need(j, "quiver", ""));
    if (j.contains("relations")) {
        std::size_t i = 0;
        for (auto& rel : j.at("relations"))
            p.relations.push_back(
                parse_combo<S>(rel, p.quiver, p.field, "relations[" + std::to_string(i++) + "]"));
    }
    if (j.contains("config")) {
        const json& c = j.at("config");
        if (c.contains("max_dim")) p.r_max_dim = static_cast<Index>(c.at("max_dim").template get<int64_t>());
        if (c.contains("endo_max_dim")) p.e_max_dim = static_cast<Index>(c.at("endo_max_dim").template get<int64_t>());
        else p.e_max_dim = p.r_max_dim;
        if (c.contains("seed")) p.cfg.seed = c.at("seed").get<uint64_t>();
        if (c.contains("iso_search_cap")) p.cfg.iso_search_cap = c.at("iso_search_cap").get<int64_t>();
        if (c.contains("path_length_cap")) p.cfg.path_length_cap = c.at("path_length_cap").get<int64_t>();
        if (c.contains("checks"))
            for (auto& n : c.at("checks")) p.checks.push_back(n.get<std::string>());
        p.cfg.max_dim = std::max<int64_t>(p.cfg.max_dim, std::max(p.r_max_dim, p.e_max_dim));
    }
    p.algebra = make_path_algebra<S>(p.quiver, p.relations, p.field, p.cfg);

    if (j.contains("modules")) {
        for (auto& [name, jm] : j.at("modules").items()) {
            std::string path = "modules." + name;
            RawModule<S> raw;
            raw.dims.assign(p.quiver.vertices.size(), 0);
            for (auto& [vlabel, jdim] : iodetail::need(jm, "dims", path).items()) {
                int vi;
                try {
                    vi = p.quiver.vertex_index(vlabel);
                } catch (const error&) {
                    throw usage_error(path + ".dims: unknown vertex '" + vlabel + "'");
                }
                raw.dims[vi] = static_cast<Index>(jdim.template get<int64_t>());
            }
            if (jm.contains("arrows")) {
                for (auto& [aname, jmat] : jm.at("arrows").items()) {
                    int ai;
                    try {
                        ai = p.quiver.arrow_index(aname);
                    } catch (const error&) {
                        throw usage_error(path + ".arrows: unknown arrow '" + aname + "'");
                    }
                    Index dr = raw.dims[p.quiver.arrows[ai].from];
                    Index dc = raw.dims[p.quiver.arrows[ai].to];
                    Mat<S> m = mat_zero<S>(dr, dc);
                    if (static_cast<Index>(jmat.size()) != dr)
                        throw usage_error(path + ".arrows." + aname + ": expected " +
                                          std::to_string(dr) + " rows");
                    for (Index r = 0; r < dr; ++r) {
                        if (static_cast<Index>(jmat.at(r).size()) != dc)
                            throw usage_error(path + ".arrows." + aname + "[" + std::to_string(r) +
                                              "]: expected " + std::to_string(dc) + " entries");
                        for (Index c = 0; c < dc; ++c)
                            m(r, c) = scalar_from_decimal<S>(
                                p.field, iodetail::coeff_string(jmat.at(r).at(c),
                                                                path + ".arrows." + aname));
                    }
                    raw.arrows[aname] = std::move(m);
                }
            }
            p.modules.emplace(name, build_module<S>(p.algebra, raw, path));
            p.raw_modules.emplace(name, std::move(raw));
        }
    }

    if (j.contains("complexes")) {
        for (auto& [name, jc] : j.at("complexes").items()) {
            std::string path = "complexes." + name;
            RawComplex<S> raw;
            auto parse_entry = [&](const json& arr, const char* key) {
                std::vector<int> out;
                std::size_t i = 0;
                for (auto& v : arr) {
                    std::string label = v.get<std::string>();
                    std::string stripped =
                        (label.size() > 1 && label[0] == 'P') ? label.substr(1) : label;
                    int vi = -1;
                    for (std::size_t t = 0; t < p.quiver.vertices.size(); ++t)
                        if (p.quiver.vertices[t] == label || p.quiver.vertices[t] == stripped)
                            vi = static_cast<int>(t);
                    if (vi < 0)
                        throw usage_error(path + "." + key + "[" + std::to_string(i) +
                                          "]: unknown projective '" + label + "'");
                    out.push_back(vi);
                    ++i;
                }
                return out;
            };
            raw.pm1 = parse_entry(iodetail::need(jc, "pm1", path), "pm1");
            raw.p0 = parse_entry(iodetail::need(jc, "p0", path), "p0");
            const json& sig = iodetail::need(jc, "sigma", path);
            if (sig.size() != raw.p0.size())
                throw usage_error(path + ".sigma: expected " + std::to_string(raw.p0.size()) +
                                  " rows (one per degree-0 summand)");
            std::vector<std::vector<RowVec<S>>> entries;
            for (std::size_t r = 0; r < raw.p0.size(); ++r) {
                if (sig.at(r).size() != raw.pm1.size())
                    throw usage_error(path + ".sigma[" + std::to_string(r) + "]: expected " +
                                      std::to_string(raw.pm1.size()) + " entries");
                raw.sigma.emplace_back();
                entries.emplace_back();
                for (std::size_t c = 0; c < raw.pm1.size(); ++c) {
                    std::string epath =
                        path + ".sigma[" + std::to_string(r) + "][" + std::to_string(c) + "]";
                    const json& cell = sig.at(r).at(c);
                    if (cell.empty()) {
                        raw.sigma.back().push_back({});
                        entries.back().push_back(p.algebra->zero());
                        continue;
                    }
                    // entries live in e_t A e_s: paths run from the target
                    // vertex to the source vertex under left-to-right
                    // composition
                    PathCombo<S> combo =
                        parse_combo<S>(cell, p.quiver, p.field, epath, raw.p0[r]);
                    for (auto& term : combo) {
                        if (term.path.source() != raw.p0[r] ||
                            term.path.target(p.quiver) != raw.pm1[c])
                            throw usage_error(epath + ": path is not an element of e_t A e_s "
                                                      "for this component");
                    }
                    entries.back().push_back(p.algebra->combo_element(combo));
                    raw.sigma.back().push_back(std::move(combo));
                }
            }
            try {
                p.complexes.emplace(
                    name, two_term_from_elements<S>(p.algebra, raw.pm1, raw.p0, entries));
            } catch (const error& e) {
                throw usage_error(path + ": " + e.what());
            }
            p.raw_complexes.emplace(name, std::move(raw));
        }
    }
    return p;
}

template <class S>
json combo_to_json(const Quiver& q, const PathCombo<S>& combo) {
    json out = json::array();
    for (auto& t : combo) {
        json term;
        term["coeff"] = scalar_to_string(t.coeff);
        json arr = json::array();
        for (int a : t.path.arrows) arr.push_back(q.arrows[a].name);
        term["path"] = arr;
        out.push_back(term);
    }
    return out;
}

template <class S>
json save_project(const Project<S>& p) {
    json j;
    if (p.field.is_finite())
        j["field"] = {{"type", "Fp"}, {"p", p.field.p}};
    else
        j["field"] = {{"type", "Q"}};
    json verts = json::array();
    for (auto& v : p.quiver.vertices) verts.push_back(v);
    json arrows = json::array();
    for (auto& a : p.quiver.arrows)
        arrows.push_back({{"name", a.name},
                          {"from", p.quiver.vertices[a.from]},
                          {"to", p.quiver.vertices[a.to]}});
    j["quiver"] = {{"vertices", verts}, {"arrows", arrows}};
    json rels = json::array();
    for (auto& r : p.relations) rels.push_back(combo_to_json<S>(p.quiver, r));
    j["relations"] = rels;
    json mods = json::object();
    for (auto& [name, raw] : p.raw_modules) {
        json jm;
        json dims = json::object();
        for (std::size_t v = 0; v < raw.dims.size(); ++v)
            if (raw.dims[v] > 0) dims[p.quiver.vertices[v]] = raw.dims[v];
        jm["dims"] = dims;
        json jarr = json::object();
        for (auto& [aname, m] : raw.arrows) {
            json rows = json::array();
            for (Index r = 0; r < m.rows(); ++r) {
                json row = json::array();
                for (Index c = 0; c < m.cols(); ++c) row.push_back(scalar_to_string(m(r, c)));
                rows.push_back(row);
            }
            jarr[aname] = rows;
        }
        jm["arrows"] = jarr;
        mods[name] = jm;
    }
    j["modules"] = mods;
    json cxs = json::object();
    for (auto& [name, raw] : p.raw_complexes) {
        json jc;
        json pm1 = json::array(), p0 = json::array();
        for (int v : raw.pm1) pm1.push_back("P" + p.quiver.vertices[v]);
        for (int v : raw.p0) p0.push_back("P" + p.quiver.vertices[v]);
        jc["pm1"] = pm1;
        jc["p0"] = p0;
        json sig = json::array();
        for (auto& row : raw.sigma) {
            json jrow = json::array();
            for (auto& combo : row) jrow.push_back(combo_to_json<S>(p.quiver, combo));
            sig.push_back(jrow);
        }
        jc["sigma"] = sig;
        cxs[name] = jc;
    }
    j["complexes"] = cxs;
    j["config"] = {{"max_dim", p.r_max_dim}, {"endo_max_dim", p.e_max_dim}, {"seed", p.cfg.seed}};
    return j;
}

inline json report_to_json(const VerificationReport& rep) {
    json j;
    j["algebra"] = rep.algebra;
    j["complex"] = rep.complex_name;
    json checks = json::array();
    for (auto& c : rep.checks) {
        json jc;
        jc["name"] = c.name;
        jc["paper_ref"] = c.statement;
        jc["instances"] = c.instances;
        jc["failures"] = c.failures;
        if (c.skipped) {
            jc["skipped"] = true;
            jc["skip_reason"] = c.skip_reason;
        }
        checks.push_back(jc);
    }
    j["checks"] = checks;
    j["summary"] = {{"passed", rep.passed()}, {"failed", rep.failed()}, {"skipped", rep.skipped()}};
    return j;
}

}  // namespace silt

#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "finshape/diameter.hpp"
#include "finshape/errors.hpp"
#include "finshape/homology.hpp"
#include "finshape/metric.hpp"
#include "finshape/poset.hpp"
#include "finshape/scalar.hpp"
#include "finshape/sequence.hpp"

namespace finshape {

using json = nlohmann::ordered_json;

namespace io_detail {

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw input_error("malformed JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw input_error("cannot write file: " + path.string());
    out << text;
}

inline void write_json_file(const std::filesystem::path& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

}  // namespace io_detail

// ---- Poset files: { "elements": [{"id": ...}], "covers": [[a, b]] } ----

inline json poset_to_json(const FinitePoset& X) {
    json elements = json::array();
    for (int i : X.indices_by_id()) elements.push_back({{"id", X.id(i)}});
    json covers = json::array();
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [a, b] : X.covers()) edges.emplace_back(X.id(a), X.id(b));
    std::sort(edges.begin(), edges.end());
    for (const auto& [a, b] : edges) covers.push_back({a, b});
    return json{{"elements", elements}, {"covers", covers}};
}

inline PosetPtr poset_from_json(const json& j) {
    if (!j.is_object() || !j.contains("elements") || !j.contains("covers"))
        throw input_error("poset JSON needs \"elements\" and \"covers\"");
    std::vector<std::string> ids;
    for (const auto& e : j.at("elements")) {
        if (!e.is_object() || !e.contains("id") || !e.at("id").is_string())
            throw input_error("poset element without a string \"id\"");
        ids.push_back(e.at("id").get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> covers;
    for (const auto& c : j.at("covers")) {
        if (!c.is_array() || c.size() != 2)
            throw input_error("poset cover entries must be [lower, upper] pairs");
        covers.emplace_back(c.at(0).get<std::string>(), c.at(1).get<std::string>());
    }
    return make_poset(std::move(ids), covers);
}

inline void save_poset(const std::filesystem::path& path, const FinitePoset& X) {
    io_detail::write_json_file(path, poset_to_json(X));
}

inline PosetPtr load_poset(const std::filesystem::path& path) {
    return poset_from_json(io_detail::read_json_file(path));
}

// ---- Map files: { "source": ref|inline, "target": ref|inline,
//                   "assignment": {id: id} } ----

inline json map_to_json(const MonotoneMap& f, const std::string& source_ref = "",
                        const std::string& target_ref = "") {
    json j;
    j["source"] = source_ref.empty() ? poset_to_json(*f.source) : json(source_ref);
    j["target"] = target_ref.empty() ? poset_to_json(*f.target) : json(target_ref);
    json assignment = json::object();
    for (int i : f.source->indices_by_id())
        assignment[f.source->id(i)] = f.target->id(f.assignment[i]);
    j["assignment"] = assignment;
    return j;
}

inline MonotoneMap map_from_json(const json& j, const std::filesystem::path& base_dir = ".") {
    if (!j.is_object() || !j.contains("source") || !j.contains("target") ||
        !j.contains("assignment"))
        throw input_error("map JSON needs \"source\", \"target\" and \"assignment\"");
    auto resolve = [&](const json& ref) -> PosetPtr {
        if (ref.is_string()) return load_poset(base_dir / ref.get<std::string>());
        return poset_from_json(ref);
    };
    MonotoneMap f{resolve(j.at("source")), resolve(j.at("target")), {}};
    f.assignment.assign(f.source->size(), -1);
    for (const auto& [from, to] : j.at("assignment").items()) {
        if (!to.is_string()) throw input_error("map assignment values must be element ids");
        f.assignment[f.source->index_of(from)] = f.target->index_of(to.get<std::string>());
    }
    for (int i = 0; i < f.source->size(); ++i)
        if (f.assignment[i] < 0)
            throw input_error("map assignment misses element " + f.source->id(i));
    validate_monotone(f);
    return f;
}

inline void save_map(const std::filesystem::path& path, const MonotoneMap& f,
                     const std::string& source_ref = "", const std::string& target_ref = "") {
    io_detail::write_json_file(path, map_to_json(f, source_ref, target_ref));
}

inline MonotoneMap load_map(const std::filesystem::path& path) {
    return map_from_json(io_detail::read_json_file(path), path.parent_path());
}

// ---- Point-cloud files: { "dim": d, "points": [[x, ...]] } with rational
//      strings "p/q" for exact coordinates, or { "matrix": [[d_ij]] } ----

inline json space_to_json(const FiniteMetricSpace& M) {
    json j;
    if (M.has_exact()) {
        j["dim"] = M.dim();
        json pts = json::array();
        for (const auto& p : M.exact_coords()) {
            json row = json::array();
            for (const auto& c : p) row.push_back(to_string(c));
            pts.push_back(row);
        }
        j["points"] = pts;
    } else if (!M.coords().empty() || M.size() == 0) {
        j["dim"] = M.dim();
        j["points"] = M.coords();
    }
    return j;
}

inline FiniteMetricSpace space_from_json(const json& j) {
    if (j.contains("matrix")) {
        std::vector<std::vector<double>> m;
        for (const auto& row : j.at("matrix")) m.push_back(row.get<std::vector<double>>());
        return FiniteMetricSpace::from_matrix(std::move(m));
    }
    if (!j.contains("points")) throw input_error("point-cloud JSON needs \"points\" or \"matrix\"");
    bool exact = true;
    for (const auto& row : j.at("points"))
        for (const auto& c : row)
            if (!c.is_string() && !c.is_number_integer()) exact = false;
    if (exact) {
        std::vector<std::vector<Rat>> pts;
        for (const auto& row : j.at("points")) {
            std::vector<Rat> p;
            for (const auto& c : row)
                p.push_back(c.is_string() ? parse_rational(c.get<std::string>())
                                          : Rat(c.get<long long>()));
            pts.push_back(std::move(p));
        }
        return FiniteMetricSpace::from_exact_points(std::move(pts));
    }
    std::vector<std::vector<double>> pts;
    for (const auto& row : j.at("points")) {
        std::vector<double> p;
        for (const auto& c : row)
            p.push_back(c.is_string() ? to_double(parse_rational(c.get<std::string>()))
                                      : c.get<double>());
        pts.push_back(std::move(p));
    }
    return FiniteMetricSpace::from_points(std::move(pts));
}

inline void save_space(const std::filesystem::path& path, const FiniteMetricSpace& M) {
    io_detail::write_json_file(path, space_to_json(M));
}

inline FiniteMetricSpace load_space(const std::filesystem::path& path) {
    return space_from_json(io_detail::read_json_file(path));
}

// ---- Sequence manifests: stage and bond files live next to the manifest and
//      are referenced by relative path, so a manifest directory is archival.
//
//      { "schedule": {"eps_sq": [...], ...} (optional), "variant": "q"|"p",
//        "stages": ["stage1.json", ...], "bonds": ["bond1.json", ...] } ----

inline void save_sequence(const std::filesystem::path& manifest_path, const InverseSequence& S,
                          const json& schedule = json::object(),
                          const std::string& variant = "") {
    S.validate();
    auto dir = manifest_path.parent_path();
    json j;
    if (!schedule.empty()) j["schedule"] = schedule;
    if (!variant.empty()) j["variant"] = variant;
    json stages = json::array(), bonds = json::array();
    for (size_t n = 0; n < S.stages.size(); ++n) {
        std::string name = "stage" + std::to_string(n + 1) + ".json";
        save_poset(dir / name, *S.stages[n]);
        stages.push_back(name);
    }
    for (size_t n = 0; n < S.bonds.size(); ++n) {
        std::string name = "bond" + std::to_string(n + 1) + ".json";
        save_map(dir / name, S.bonds[n], "stage" + std::to_string(n + 2) + ".json",
                 "stage" + std::to_string(n + 1) + ".json");
        bonds.push_back(name);
    }
    j["stages"] = stages;
    j["bonds"] = bonds;
    io_detail::write_json_file(manifest_path, j);
}

inline InverseSequence load_sequence(const std::filesystem::path& manifest_path) {
    json j = io_detail::read_json_file(manifest_path);
    if (!j.contains("stages") || !j.contains("bonds"))
        throw input_error("sequence manifest needs \"stages\" and \"bonds\"");
    auto dir = manifest_path.parent_path();
    InverseSequence S;
    for (const auto& ref : j.at("stages")) S.stages.push_back(load_poset(dir / ref.get<std::string>()));
    for (size_t n = 0; n < j.at("bonds").size(); ++n) {
        MonotoneMap f = load_map(dir / j.at("bonds")[n].get<std::string>());
        // Re-point the map at the loaded stage objects so downstream
        // compositions stay cheap.
        MonotoneMap g{S.stages[n + 1], S.stages[n], std::vector<int>(S.stages[n + 1]->size())};
        for (int i = 0; i < g.source->size(); ++i)
            g.assignment[i] = g.target->index_of(f.target->id(f.assignment[f.source->index_of(g.source->id(i))]));
        S.bonds.push_back(g);
    }
    S.validate();
    return S;
}

// ---- Schedule JSON inside manifests / approx inputs:
//      { "eps_sq": ["5", "1/32", ...] | [numbers], "variant": "q"|"p" } ----

inline json schedule_to_json(const EpsilonSchedule& schedule) {
    json eps = json::array();
    for (const auto& e : schedule.eps_sq) {
        if (e.exact) eps.push_back(to_string(*e.exact));
        else eps.push_back(e.value);
    }
    return json{{"eps_sq", eps},
                {"variant", schedule.variant == BondVariant::Q ? "q" : "p"}};
}

inline EpsilonSchedule schedule_from_json(const json& j) {
    if (!j.is_object() || !j.contains("eps_sq"))
        throw input_error("schedule JSON needs \"eps_sq\"");
    EpsilonSchedule s;
    for (const auto& e : j.at("eps_sq")) {
        if (e.is_string()) s.eps_sq.push_back(Sq::from_exact(parse_rational(e.get<std::string>())));
        else s.eps_sq.push_back(Sq::from_double(e.get<double>()));
    }
    std::string variant = j.value("variant", "q");
    if (variant != "q" && variant != "p") throw input_error("variant must be \"q\" or \"p\"");
    s.variant = variant == "q" ? BondVariant::Q : BondVariant::P;
    s.validate();
    return s;
}

// ---- Reports ----

inline json verification_report_to_json(const VerificationReport& R) {
    json checks = json::array();
    for (const auto& c : R.checks)
        checks.push_back({{"stage", c.stage},
                          {"diagram", c.diagram},
                          {"verdict", to_string(c.verdict)},
                          {"fence_length", c.fence_length}});
    return json{{"checks", checks},
                {"all_passed", R.all_passed()},
                {"any_failed", R.any_failed()}};
}

inline json matrix_to_json(const GFMatrix& m) {
    json rows = json::array();
    for (const auto& r : m.a) rows.push_back(r);
    return json{{"rows", m.rows}, {"cols", m.cols}, {"entries", rows}};
}

inline json homology_report_to_json(const HomologySequenceReport& R) {
    json maps = json::array();
    for (const auto& m : R.maps) maps.push_back(matrix_to_json(m));
    json stable = json::object();
    for (size_t n = 0; n < R.stable_dims.size(); ++n)
        stable[std::to_string(n + 1)] = R.stable_dims[n];
    json j{{"degree", R.degree},
           {"p", R.p},
           {"betti", R.betti},
           {"maps", maps},
           {"stable_dims", stable},
           {"verdict", to_string(R.verdict)},
           {"window", R.window}};
    if (R.verdict == CechVerdict::Stabilized) j["stabilized_at"] = R.stabilized_at;
    return j;
}

}  // namespace finshape

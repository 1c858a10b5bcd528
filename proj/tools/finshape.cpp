// Command-line front end: generators, approximation pipeline, poset
// reduction, sequence verification, and homology reports over stable JSON
// file formats.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "finshape/diameter.hpp"
#include "finshape/dot.hpp"
#include "finshape/errors.hpp"
#include "finshape/generators.hpp"
#include "finshape/homology.hpp"
#include "finshape/homotopy.hpp"
#include "finshape/io.hpp"
#include "finshape/metric.hpp"
#include "finshape/poset.hpp"
#include "finshape/sequence.hpp"

namespace fs = finshape;

namespace {

struct Caps {
    std::size_t max_elements = 200000;
    std::size_t exact_bound = 20000;
};

// FINSHAPE_CAPS="max-elements=500000,exact-bound=40000"
Caps caps_from_env() {
    Caps caps;
    const char* env = std::getenv("FINSHAPE_CAPS");
    if (!env) return caps;
    std::stringstream ss(env);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw fs::input_error("FINSHAPE_CAPS entries must look like key=value");
        std::string key = item.substr(0, eq);
        std::size_t value = 0;
        try {
            value = std::stoull(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw fs::input_error("FINSHAPE_CAPS value is not a number: " + item);
        }
        if (value == 0) throw fs::input_error("FINSHAPE_CAPS values must be positive");
        if (key == "max-elements") caps.max_elements = value;
        else if (key == "exact-bound") caps.exact_bound = value;
        else throw fs::input_error("unknown FINSHAPE_CAPS key: " + key);
    }
    return caps;
}

std::vector<fs::Sq> parse_eps_list(const std::string& text, bool squared) {
    std::vector<fs::Sq> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (item.find('/') != std::string::npos || item.find('.') == std::string::npos) {
            fs::Rat r = fs::parse_rational(item);
            out.push_back(fs::Sq::from_exact(squared ? r : r * r));
        } else {
            double v = std::stod(item);
            out.push_back(fs::Sq::from_double(squared ? v : v * v));
        }
    }
    if (out.empty()) throw fs::input_error("empty epsilon list");
    return out;
}

std::vector<int> parse_degrees(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    if (out.empty()) throw fs::input_error("empty degree list");
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"finite-space shape toolkit"};
    app.require_subcommand(1);
    Caps caps = caps_from_env();

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate point clouds");
    gen->require_subcommand(1);
    std::string gen_out;
    int gen_stage = 1, gen_n = 16;
    bool gen_allow_large = false;
    std::string gen_in;

    auto* gen_sine = gen->add_subcommand("sine-curve", "sample of the comb/sine model");
    gen_sine->add_option("--stage", gen_stage, "stage number (1-3; 4 behind --allow-large)")->required();
    gen_sine->add_flag("--allow-large", gen_allow_large, "permit the large stage-4 sample");
    gen_sine->add_option("--out", gen_out, "output point-cloud file")->required();
    gen_sine->callback([&] {
        fs::SineStage s = fs::generate_sine_curve(gen_stage, gen_allow_large);
        std::vector<std::vector<fs::Rat>> coords;
        for (const auto& [x, y] : s.points) coords.push_back({x, y});
        fs::save_space(gen_out, fs::FiniteMetricSpace::from_exact_points(std::move(coords)));
        std::cout << "sine-curve stage " << s.stage << ": " << s.points.size()
                  << " points, eps_sq = " << fs::to_string(s.eps_sq) << "\n";
    });

    auto* gen_circle = gen->add_subcommand("circle", "n points on the unit circle");
    gen_circle->add_option("--n", gen_n, "point count")->required();
    gen_circle->add_option("--out", gen_out, "output point-cloud file")->required();
    gen_circle->callback([&] {
        fs::save_space(gen_out, fs::generate_circle(gen_n));
        std::cout << "circle: " << gen_n << " points\n";
    });

    auto* gen_interval = gen->add_subcommand("interval", "n uniform points on [0,1]");
    gen_interval->add_option("--n", gen_n, "point count")->required();
    gen_interval->add_option("--out", gen_out, "output point-cloud file")->required();
    gen_interval->callback([&] {
        fs::save_space(gen_out, fs::generate_interval(gen_n));
        std::cout << "interval: " << gen_n << " points\n";
    });

    auto* gen_file = gen->add_subcommand("file", "validate and re-emit a point cloud");
    gen_file->add_option("--in", gen_in, "input point-cloud file")->required();
    gen_file->add_option("--out", gen_out, "output point-cloud file")->required();
    gen_file->callback([&] {
        fs::FiniteMetricSpace M = fs::load_space(gen_in);
        M.audit_triangle_inequality(1e-9);
        fs::save_space(gen_out, M);
        std::cout << "point cloud: " << M.size() << " points\n";
    });

    // ---- approx ----
    auto* approx = app.add_subcommand("approx", "finite approximation pipeline");
    approx->require_subcommand(1);
    std::string ap_in, ap_out, ap_eps, ap_eps_sq, ap_variant = "q", ap_method = "greedy";
    std::string ap_given;
    int ap_stages = 0;
    double ap_eta = 1e-12;

    auto* ap_build = approx->add_subcommand("build", "build stage posets and bonds");
    ap_build->add_option("--in", ap_in, "point-cloud file")->required();
    ap_build->add_option("--eps", ap_eps, "comma list of epsilon values");
    ap_build->add_option("--eps-sq", ap_eps_sq, "comma list of squared epsilon values (rationals allowed)");
    ap_build->add_option("--variant", ap_variant, "bond variant: q or p");
    ap_build->add_option("--stages", ap_stages, "number of stages (default: schedule length)");
    ap_build->add_option("--method", ap_method, "sampling: greedy, grid or given");
    ap_build->add_option("--given", ap_given, "JSON file {\"samples\": [[point indices]]} for --method given");
    ap_build->add_option("--eta", ap_eta, "tolerance for inexact comparisons");
    ap_build->add_option("--out", ap_out, "output manifest file")->required();
    ap_build->callback([&] {
        if (ap_eps.empty() == ap_eps_sq.empty())
            throw fs::input_error("exactly one of --eps and --eps-sq is required");
        fs::EpsilonSchedule schedule;
        schedule.eps_sq = ap_eps.empty() ? parse_eps_list(ap_eps_sq, true)
                                         : parse_eps_list(ap_eps, false);
        if (ap_variant != "q" && ap_variant != "p")
            throw fs::input_error("variant must be q or p");
        schedule.variant = ap_variant == "q" ? fs::BondVariant::Q : fs::BondVariant::P;
        int n_stages = ap_stages > 0 ? ap_stages : static_cast<int>(schedule.eps_sq.size());

        fs::SamplingMethod method = fs::SamplingMethod::Greedy;
        if (ap_method == "grid") method = fs::SamplingMethod::Grid;
        else if (ap_method == "given") method = fs::SamplingMethod::Given;
        else if (ap_method != "greedy") throw fs::input_error("unknown sampling method: " + ap_method);
        std::vector<std::vector<int>> given;
        if (!ap_given.empty()) {
            fs::json j = fs::io_detail::read_json_file(ap_given);
            for (const auto& s : j.at("samples")) given.push_back(s.get<std::vector<int>>());
        }

        auto space = std::make_shared<fs::FiniteMetricSpace>(fs::load_space(ap_in));
        fs::BuildOptions opts;
        opts.max_elements = caps.max_elements;
        opts.eta = ap_eta;
        fs::FiniteApproximation fa =
            fs::build_finite_approximation(space, schedule, n_stages, method, given, opts);

        fs::InverseSequence S;
        for (const auto& st : fa.stages) S.stages.push_back(st.poset);
        S.bonds = fa.bonds;
        fs::save_sequence(ap_out, S, fs::schedule_to_json(schedule), ap_variant);
        std::cout << "stages:";
        for (const auto& s : fa.samples) std::cout << " " << s.size();
        std::cout << "\nposet sizes:";
        for (const auto& st : fa.stages) std::cout << " " << st.poset->size();
        std::cout << "\n";
    });

    auto* ap_sine = approx->add_subcommand("sine", "sine-curve pipeline with the designated stage samples");
    ap_sine->add_option("--stages", ap_stages, "stage count (1-3; 4 behind --allow-large)")->required();
    bool ap_allow_large = false;
    ap_sine->add_flag("--allow-large", ap_allow_large, "permit the large stage-4 sample");
    ap_sine->add_option("--out", ap_out, "output manifest file")->required();
    ap_sine->callback([&] {
        fs::SinePipelineInput in = fs::sine_pipeline_input(ap_stages, ap_allow_large);
        fs::BuildOptions opts;
        opts.max_elements = caps.max_elements;
        fs::FiniteApproximation fa = fs::build_finite_approximation(
            in.space, in.schedule, ap_stages, fs::SamplingMethod::Given, in.samples, opts);
        fs::InverseSequence S;
        for (const auto& st : fa.stages) S.stages.push_back(st.poset);
        S.bonds = fa.bonds;
        fs::save_sequence(ap_out, S, fs::schedule_to_json(in.schedule), "p");
        std::cout << "stages:";
        for (const auto& s : fa.samples) std::cout << " " << s.size();
        std::cout << "\nposet sizes:";
        for (const auto& st : fa.stages) std::cout << " " << st.poset->size();
        std::cout << "\n";
    });

    // ---- poset ----
    auto* poset = app.add_subcommand("poset", "single-poset operations");
    poset->require_subcommand(1);
    std::string po_in, po_out;
    int po_p = 2;

    auto* po_core = poset->add_subcommand("core", "beat-point core with witnesses");
    po_core->add_option("--in", po_in, "poset file")->required();
    po_core->add_option("--out", po_out, "output directory for core and witness files");
    po_core->callback([&] {
        fs::PosetPtr X = fs::load_poset(po_in);
        fs::CoreResult cr = fs::core(X);
        if (!po_out.empty()) {
            std::filesystem::path dir = po_out;
            fs::save_poset(dir / "core.json", *cr.core);
            fs::save_map(dir / "inclusion.json", cr.inclusion);
            fs::save_map(dir / "retraction.json", cr.retraction);
            fs::json log = fs::json::array();
            for (const auto& s : cr.removal_log)
                log.push_back({{"element", s.element},
                               {"kind", fs::to_string(s.kind)},
                               {"image", s.image}});
            fs::io_detail::write_json_file(dir / "removal_log.json", log);
        }
        std::cout << "core size " << cr.core->size() << ", removal log length "
                  << cr.removal_log.size() << "\n";
    });

    auto* po_height = poset->add_subcommand("height", "longest chain length minus one");
    po_height->add_option("--in", po_in, "poset file")->required();
    po_height->callback([&] {
        std::cout << "height " << fs::load_poset(po_in)->height() << "\n";
    });

    auto* po_hom = poset->add_subcommand("homology", "Betti numbers of the order complex");
    po_hom->add_option("--in", po_in, "poset file")->required();
    po_hom->add_option("--p", po_p, "field characteristic (prime)");
    po_hom->callback([&] {
        auto b = fs::poset_betti(*fs::load_poset(po_in), po_p);
        std::cout << "betti:";
        for (int v : b) std::cout << " " << v;
        std::cout << "\n";
    });

    auto* po_hasse = poset->add_subcommand("hasse", "Hasse diagram as DOT");
    po_hasse->add_option("--in", po_in, "poset file")->required();
    po_hasse->add_option("--out", po_out, "output DOT file (stdout when omitted)");
    bool po_dot = false;
    po_hasse->add_flag("--dot", po_dot, "emit DOT (the only supported format)");
    po_hasse->callback([&] {
        std::string dot = fs::hasse_export(*fs::load_poset(po_in));
        if (po_out.empty()) std::cout << dot;
        else fs::io_detail::write_text_file(po_out, dot);
    });

    // ---- seq ----
    auto* seq = app.add_subcommand("seq", "inverse-sequence operations");
    seq->require_subcommand(1);
    std::string sq_in, sq_out, sq_mode = "witness", sq_degrees = "0,1", sq_select;
    int sq_p = 2, sq_window = 2;

    auto* sq_core = seq->add_subcommand("core", "stagewise core sequence");
    sq_core->add_option("--in", sq_in, "sequence manifest")->required();
    sq_core->add_option("--out", sq_out, "output manifest for the core sequence")->required();
    sq_core->callback([&] {
        fs::InverseSequence S = fs::load_sequence(sq_in);
        fs::SequenceCoreResult R = fs::sequence_core(S);
        fs::save_sequence(sq_out, R.core_sequence);
        std::cout << "core stage sizes:";
        for (const auto& st : R.core_sequence.stages) std::cout << " " << st->size();
        std::cout << "\n";
    });

    auto* sq_verify = seq->add_subcommand("verify-core", "check the core ladder diagrams");
    sq_verify->add_option("--in", sq_in, "sequence manifest")->required();
    sq_verify->add_option("--mode", sq_mode, "homotopy search mode: witness or exact");
    sq_verify->add_option("--out", sq_out, "report file (stdout summary always printed)");
    sq_verify->callback([&] {
        fs::InverseSequence S = fs::load_sequence(sq_in);
        fs::SequenceCoreResult R = fs::sequence_core(S);
        fs::HomotopyMode mode =
            sq_mode == "exact" ? fs::HomotopyMode::Exact : fs::HomotopyMode::Witness;
        fs::HomotopyOptions opts;
        opts.exact_bound = caps.exact_bound;
        fs::VerificationReport rep = fs::verify_core_equivalence(S, R, mode, opts);
        if (!sq_out.empty())
            fs::io_detail::write_json_file(sq_out, fs::verification_report_to_json(rep));
        for (const auto& c : rep.checks)
            std::cout << "stage " << c.stage << " " << c.diagram << ": "
                      << fs::to_string(c.verdict)
                      << (c.fence_length >= 0
                              ? " (fence length " + std::to_string(c.fence_length) + ")"
                              : "")
                      << "\n";
        if (rep.any_failed()) throw fs::verification_error("a core ladder diagram failed");
        if (!rep.all_passed()) std::cout << "warning: some diagrams are inconclusive\n";
    });

    auto* sq_cech = seq->add_subcommand("cech", "stable-image homology report");
    sq_cech->add_option("--in", sq_in, "sequence manifest")->required();
    sq_cech->add_option("--degrees", sq_degrees, "comma list of homology degrees");
    sq_cech->add_option("--p", sq_p, "field characteristic (prime)");
    sq_cech->add_option("--window", sq_window, "trailing window width");
    sq_cech->add_option("--out", sq_out, "report file prefix (one file per degree)");
    sq_cech->callback([&] {
        fs::InverseSequence S = fs::load_sequence(sq_in);
        for (int l : parse_degrees(sq_degrees)) {
            fs::HomologySequenceReport rep = fs::homology_sequence(S, l, sq_p, sq_window);
            if (!sq_out.empty())
                fs::io_detail::write_json_file(sq_out + ".H" + std::to_string(l) + ".json",
                                               fs::homology_report_to_json(rep));
            std::cout << "H" << l << ": " << fs::to_string(rep.verdict);
            if (rep.verdict == fs::CechVerdict::Stabilized)
                std::cout << " at " << rep.stabilized_at;
            std::cout << " (betti";
            for (int b : rep.betti) std::cout << " " << b;
            std::cout << ")\n";
        }
    });

    auto* sq_height = seq->add_subcommand("height", "max stage height");
    sq_height->add_option("--in", sq_in, "sequence manifest")->required();
    sq_height->callback([&] {
        fs::SequenceHeight h = fs::sequence_height(fs::load_sequence(sq_in));
        std::cout << "height " << h.max_height << " (per stage:";
        for (int v : h.per_stage) std::cout << " " << v;
        std::cout << ")\n";
    });

    auto* sq_restrict = seq->add_subcommand("restrict", "restrict to per-stage lower sets");
    sq_restrict->add_option("--in", sq_in, "sequence manifest")->required();
    sq_restrict->add_option("--select", sq_select,
                            "JSON file {\"selections\": [[element ids]]}")->required();
    sq_restrict->add_option("--out", sq_out, "output manifest")->required();
    sq_restrict->callback([&] {
        fs::InverseSequence S = fs::load_sequence(sq_in);
        fs::json j = fs::io_detail::read_json_file(sq_select);
        std::vector<std::vector<std::string>> selections;
        for (const auto& s : j.at("selections"))
            selections.push_back(s.get<std::vector<std::string>>());
        fs::InverseSequence R = fs::restrict_sequence(S, selections);
        fs::save_sequence(sq_out, R);
        std::cout << "restricted stage sizes:";
        for (const auto& st : R.stages) std::cout << " " << st->size();
        std::cout << "\n";
    });

    // ---- maps ----
    auto* maps = app.add_subcommand("maps", "operations on monotone maps");
    maps->require_subcommand(1);
    std::string mp_f, mp_g, mp_mode = "witness";

    auto* mp_hom = maps->add_subcommand("homotopic", "fence-based homotopy test");
    mp_hom->add_option("--f", mp_f, "first map file")->required();
    mp_hom->add_option("--g", mp_g, "second map file")->required();
    mp_hom->add_option("--mode", mp_mode, "witness or exact");
    mp_hom->callback([&] {
        fs::MonotoneMap f = fs::load_map(mp_f);
        fs::MonotoneMap g = fs::load_map(mp_g);
        fs::HomotopyMode mode =
            mp_mode == "exact" ? fs::HomotopyMode::Exact : fs::HomotopyMode::Witness;
        fs::HomotopyOptions opts;
        opts.exact_bound = caps.exact_bound;
        fs::HomotopyResult r = fs::homotopic(f, g, mode, opts);
        if (r.verdict == fs::HomotopyVerdict::Yes)
            std::cout << "yes (fence length " << r.fence.size() - 1 << ")\n";
        else if (r.verdict == fs::HomotopyVerdict::No)
            std::cout << "no\n";
        else
            std::cout << "inconclusive\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const fs::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const fs::capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 2;
    } catch (const fs::construction_error& e) {
        std::cerr << "construction error: " << e.what() << "\n";
        return 3;
    } catch (const fs::welldef_error& e) {
        std::cerr << "well-definedness error: " << e.what() << "\n";
        return 3;
    } catch (const fs::verification_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

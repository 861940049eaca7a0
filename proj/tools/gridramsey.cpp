// Command-line front end: one subcommand per library operation, every run
// printing a single JSON result document on stdout.

#include "gridramsey/bounds.hpp"
#include "gridramsey/coloring_io.hpp"
#include "gridramsey/pipeline.hpp"
#include "gridramsey/qform.hpp"
#include "gridramsey/search.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace gridramsey;
using Json = nlohmann::ordered_json;

std::string rat_str(const Rat& q) {
    const Int num = boost::multiprecision::numerator(q);
    const Int den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Json sequence_json(const bounds::RationalBoundSequence& seq) {
    Json terms = Json::array();
    for (const Rat& t : seq.terms) terms.push_back(rat_str(t));
    return terms;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

struct GlobalOptions {
    int threads = 1;
    std::uint64_t seed = 0;
    std::int64_t budget_nodes = 50'000'000;
    std::int64_t budget_seconds = 600;

    search::SearchBudget budget() const {
        search::SearchBudget b;
        b.max_nodes = budget_nodes;
        b.max_seconds = budget_seconds;
        b.parallel_shards = threads;
        return b;
    }
};

void emit(const std::string& command, Json result) {
    Json doc;
    doc["schema"] = 1;
    doc["command"] = command;
    doc["result"] = std::move(result);
    std::cout << doc.dump(2) << '\n';
}

Json certificate_verdict_json(const Certificate& cert) {
    Json j;
    j["verdict"] = to_string(cert.verdict);
    j["certificate"] = cert.to_json();
    return j;
}

// Cheap certificate methods tried by `check`.
std::optional<Certificate> try_cheap_method(const std::string& method, const Int& c,
                                            const Grid& grid) {
    const Grid canonical = grid.canonicalized();
    Certificate cert;
    cert.colors = c;
    cert.grid = grid;
    cert.verdict = Verdict::kUnknown;
    cert.method = method;
    if (method == "epsilon") {
        const auto seq = bounds::epsilon_sequence(c, grid);
        cert.params["epsilon"] = rat_str(seq.last());
        if (seq.last() < 1) cert.verdict = Verdict::kGuaranteed;
    } else if (method == "gamma") {
        const auto seq = bounds::gamma_sequence(c, grid);
        cert.params["gamma"] = rat_str(seq.last());
        if (seq.all_positive_after_first()) cert.verdict = Verdict::kGuaranteed;
    } else if (method == "delta") {
        const Int t = bounds::guaranteed_count_lower_bound_ceiling(c, grid);
        cert.params["t"] = t.str();
        if (t >= 1) cert.verdict = Verdict::kGuaranteed;
    } else if (method == "hereditary") {
        if (bounds::hereditary_check(c, canonical)) cert.verdict = Verdict::kGuaranteed;
    } else {
        return std::nullopt;
    }
    if (cert.verdict == Verdict::kUnknown) cert.params["note"] = "method inconclusive";
    return cert;
}

int run(int argc, char** argv) {
    CLI::App app{"Exact decision, bounds, and certificates for monochromatic boxes in colored "
                 "grids"};
    app.require_subcommand(1);

    GlobalOptions global;
    if (const char* env = std::getenv("GRIDRAMSEY_BUDGET_SECONDS"))
        global.budget_seconds = std::strtoll(env, nullptr, 10);
    app.add_option("--threads", global.threads, "Parallel shards for search and minimization");
    app.add_option("--seed", global.seed, "Seed for randomized operations");
    app.add_option("--budget-nodes", global.budget_nodes, "Search node budget");
    app.add_option("--budget-seconds", global.budget_seconds,
                   "Search time budget (env GRIDRAMSEY_BUDGET_SECONDS)");

    // check ------------------------------------------------------------
    auto* check = app.add_subcommand("check", "Decide or certify c-guaranteedness");
    std::string check_grid, check_method = "auto", check_witness_out, check_cert_out;
    std::string check_colors;
    check->add_option("--c", check_colors, "Color count")->required();
    check->add_option("--grid", check_grid, "Grid, e.g. 3x7")->required();
    check->add_option("--method", check_method,
                      "auto|exhaustive|epsilon|gamma|delta|hereditary");
    check->add_option("--witness-out", check_witness_out, "Write a colorable witness here");
    check->add_option("--certificate-out", check_cert_out, "Write the certificate JSON here");
    check->callback([&] {
        const Grid grid = Grid::parse(check_grid);
        const Int c(check_colors);
        Certificate cert;
        if (check_method == "exhaustive") {
            cert = search::is_guaranteed_exact(c, grid, global.budget());
        } else if (check_method == "auto") {
            bool decided = false;
            for (const char* method : {"epsilon", "gamma", "delta", "hereditary"}) {
                try {
                    const auto attempt = try_cheap_method(method, c, grid);
                    if (attempt && attempt->verdict == Verdict::kGuaranteed) {
                        cert = *attempt;
                        decided = true;
                        break;
                    }
                } catch (const std::invalid_argument&) {
                    // method preconditions unmet (thin sides etc.); keep going
                }
            }
            if (!decided) cert = search::is_guaranteed_exact(c, grid, global.budget());
        } else {
            const auto attempt = try_cheap_method(check_method, c, grid);
            if (!attempt) throw CLI::ValidationError("unknown method: " + check_method);
            cert = *attempt;
        }
        if (!check_witness_out.empty() && cert.witness) {
            save_coloring_file(check_witness_out, *cert.witness);
            cert.witness_file = check_witness_out;
            cert.witness.reset();
        }
        if (!check_cert_out.empty()) write_file(check_cert_out, cert.to_json().dump(2));
        emit("check", certificate_verdict_json(cert));
    });

    // mint ---------------------------------------------------------------
    auto* mint = app.add_subcommand("mint", "Exact minimum monochromatic box count");
    std::string mint_grid, mint_colors, mint_witness_out;
    mint->add_option("--c", mint_colors)->required();
    mint->add_option("--grid", mint_grid)->required();
    mint->add_option("--witness-out", mint_witness_out, "Write a minimizing coloring here");
    mint->callback([&] {
        const Grid grid = Grid::parse(mint_grid);
        const auto result = search::min_mono_boxes_exact(Int(mint_colors), grid, global.budget());
        Json j;
        if (result.minimum) {
            j["t"] = result.minimum->str();
        } else {
            j["t"] = nullptr;
            j["note"] = "budget exhausted";
        }
        j["nodes"] = result.nodes;
        if (!mint_witness_out.empty() && result.argmin) {
            save_coloring_file(mint_witness_out, *result.argmin);
            j["witness_file"] = mint_witness_out;
        }
        emit("mint", j);
    });

    // mu -----------------------------------------------------------------
    auto* mu = app.add_subcommand("mu", "Sides of the first minimal guaranteed grid");
    std::string mu_colors;
    int mu_d = 1;
    std::string mu_coloring_out;
    mu->add_option("--c", mu_colors)->required();
    mu->add_option("--d", mu_d)->required();
    mu->add_option("--coloring-out", mu_coloring_out, "Write the minimal coloring here");
    mu->callback([&] {
        const Int c(mu_colors);
        const auto sequence = bounds::mu_sequence(c, mu_d);
        Json j;
        j["mu"] = Json::array();
        for (const Int& value : sequence) j["mu"].push_back(value.str());
        j["lower_bound_holds"] = bounds::mu_lower_bound_holds(c, mu_d);
        if (!mu_coloring_out.empty()) {
            const Coloring coloring = bounds::minimal_coloring(c, mu_d);
            save_coloring_file(mu_coloring_out, coloring);
            j["coloring_file"] = mu_coloring_out;
            j["monochromatic_boxes"] = count_monochromatic_boxes(coloring).str();
        }
        emit("mu", j);
    });

    // minimal-coloring -----------------------------------------------------
    auto* minimal = app.add_subcommand("minimal-coloring",
                                       "Coloring with exactly one monochromatic box");
    std::string minimal_colors, minimal_out;
    int minimal_d = 1;
    minimal->add_option("--c", minimal_colors)->required();
    minimal->add_option("--d", minimal_d)->required();
    minimal->add_option("--out", minimal_out)->required();
    minimal->callback([&] {
        const Coloring coloring = bounds::minimal_coloring(Int(minimal_colors), minimal_d);
        save_coloring_file(minimal_out, coloring);
        Json j;
        j["grid"] = coloring.grid().to_string();
        j["file"] = minimal_out;
        j["monochromatic_boxes"] = count_monochromatic_boxes(coloring).str();
        emit("minimal-coloring", j);
    });

    // eps / delta / gamma ---------------------------------------------------
    std::string seq_colors, seq_grid;
    bool delta_ceiling = false;

    auto* eps = app.add_subcommand("eps", "Epsilon recurrence and verdict");
    eps->add_option("--c", seq_colors)->required();
    eps->add_option("--grid", seq_grid)->required();
    eps->callback([&] {
        const auto seq = bounds::epsilon_sequence(Int(seq_colors), Grid::parse(seq_grid));
        Json j;
        j["epsilon"] = sequence_json(seq);
        j["epsilon_value"] = rat_str(seq.last());
        j["verdict"] = seq.last() < 1 ? "guaranteed" : "inconclusive";
        emit("eps", j);
    });

    auto* delta = app.add_subcommand("delta", "Delta recurrence and count bound");
    delta->add_option("--c", seq_colors)->required();
    delta->add_option("--grid", seq_grid)->required();
    delta->add_flag("--ceiling", delta_ceiling, "Apply the per-step integer strengthening");
    delta->callback([&] {
        const Int c(seq_colors);
        const Grid grid = Grid::parse(seq_grid);
        const auto seq = bounds::delta_sequence(c, grid);
        Json j;
        j["delta"] = sequence_json(seq);
        j["all_positive"] = seq.all_positive_after_first();
        j["count_bound"] = rat_str(bounds::guaranteed_count_lower_bound(c, grid));
        if (delta_ceiling)
            j["count_bound_ceiling"] = bounds::guaranteed_count_lower_bound_ceiling(c, grid).str();
        j["verdict"] = seq.all_positive_after_first() ||
                               bounds::guaranteed_count_lower_bound_ceiling(c, grid) >= 1
                           ? "guaranteed"
                           : "inconclusive";
        emit("delta", j);
    });

    auto* gamma = app.add_subcommand("gamma", "Gamma recurrence and verdict");
    gamma->add_option("--c", seq_colors)->required();
    gamma->add_option("--grid", seq_grid)->required();
    gamma->callback([&] {
        const auto seq = bounds::gamma_sequence(Int(seq_colors), Grid::parse(seq_grid));
        Json j;
        j["gamma"] = sequence_json(seq);
        j["verdict"] = seq.all_positive_after_first() ? "guaranteed" : "inconclusive";
        emit("gamma", j);
    });

    // lll -------------------------------------------------------------------
    auto* lll = app.add_subcommand("lll", "Volume below which every grid is colorable");
    std::string lll_colors;
    int lll_d = 1;
    lll->add_option("--c", lll_colors)->required();
    lll->add_option("--d", lll_d)->required();
    lll->callback([&] {
        const Int c(lll_colors);
        Json j;
        j["threshold"] = bounds::lll_volume_threshold(c, lll_d).str();
        // Proven sandwich: every grid of volume <= threshold is colorable,
        // and the construction grid is guaranteed, so the largest fully
        // colorable volume lies strictly below its volume.
        j["volume_sandwich"] = Json::array(
            {j["threshold"], (bounds::corollary_grid(c, lll_d).volume() - 1).str()});
        emit("lll", j);
    });

    // hereditary --------------------------------------------------------------
    auto* hereditary = app.add_subcommand("hereditary", "Prefix-volume criterion");
    std::string hered_colors, hered_grid;
    hereditary->add_option("--c", hered_colors)->required();
    hereditary->add_option("--grid", hered_grid)->required();
    hereditary->callback([&] {
        const Grid grid = Grid::parse(hered_grid).canonicalized();
        const auto steps = bounds::hereditary_steps(Int(hered_colors), grid);
        Json j;
        j["grid"] = grid.to_string();
        j["steps"] = Json::array();
        bool all = true;
        for (const auto& step : steps) {
            Json s;
            s["j"] = step.j;
            s["prefix_volume"] = step.prefix_volume.str();
            s["threshold"] = step.threshold.str();
            s["holds"] = step.holds;
            j["steps"].push_back(s);
            all = all && step.holds;
        }
        j["verdict"] = all ? "guaranteed" : "inconclusive";
        emit("hereditary", j);
    });

    // pinch ---------------------------------------------------------------------
    auto* pinch = app.add_subcommand("pinch", "Pinch points of an obstruction candidate");
    std::string pinch_colors, pinch_grid;
    pinch->add_option("--c", pinch_colors)->required();
    pinch->add_option("--grid", pinch_grid)->required();
    pinch->callback([&] {
        const auto set = bounds::pinch_points(Int(pinch_colors), Grid::parse(pinch_grid));
        Json j;
        j["grid"] = set.grid.to_string();
        j["points"] = Json::array();
        for (const auto& point : set.points) {
            Json p;
            p["index"] = point.index;
            p["virtual_colors"] = point.virtual_colors.str();
            p["side_upper_bound"] = point.side_upper_bound.str();
            p["prefix_volume"] = point.prefix_volume.str();
            p["growth_exponent"] = point.growth_exponent.str();
            j["points"].push_back(p);
        }
        emit("pinch", j);
    });

    // qform-build -----------------------------------------------------------------
    auto* qbuild = app.add_subcommand("qform-build", "Build and export the pair-count matrix");
    int qbuild_r = 3;
    std::string qbuild_out;
    qbuild->add_option("--r", qbuild_r)->required();
    qbuild->add_option("--out", qbuild_out, "Write the plain-text matrix here");
    qbuild->callback([&] {
        const auto inst = qform::build_matrix(qbuild_r);
        Json j;
        j["r"] = inst.r;
        j["size"] = inst.size;
        j["diag"] = inst.diag;
        if (!qbuild_out.empty()) {
            write_file(qbuild_out, inst.export_text());
            j["file"] = qbuild_out;
        } else {
            j["matrix"] = inst.export_text();
        }
        emit("qform-build", j);
    });

    // qform-min ----------------------------------------------------------------
    auto* qmin = app.add_subcommand("qform-min", "Minimize the penalized quadratic form");
    int qmin_r = 3;
    std::int64_t qmin_s = 1;
    qmin->add_option("--r", qmin_r)->required();
    qmin->add_option("--s", qmin_s)->required();
    qmin->callback([&] {
        const auto result = qform::min_rectangles(qmin_r, qmin_s, global.budget());
        Json j;
        j["r"] = qmin_r;
        j["s"] = qmin_s;
        if (result.minimum) {
            j["t"] = result.minimum->str();
            j["argmin"] = Json::array();
            for (const Int& x : result.argmin) j["argmin"].push_back(x.str());
        } else {
            j["t"] = nullptr;
            j["note"] = "budget exhausted";
        }
        j["nodes"] = result.nodes;
        emit("qform-min", j);
    });

    // spectrum ---------------------------------------------------------------
    auto* spec = app.add_subcommand("spectrum", "Exact eigenvalues and multiplicities");
    int spec_r = 3;
    spec->add_option("--r", spec_r)->required();
    spec->callback([&] {
        const auto report = qform::spectrum(spec_r);
        Json j;
        j["r"] = report.r;
        if (report.status == qform::SpectrumStatus::kVerified) {
            j["pairs"] = Json::array();
            for (const auto& [lambda, mult] : report.pairs) {
                Json p;
                p["lambda"] = lambda.str();
                p["mult"] = mult.str();
                j["pairs"].push_back(p);
            }
            j["psd"] = report.psd;
        } else {
            j["error"] = "spectrum outside conjectured set";
            j["residual_rank"] = report.residual_rank;
        }
        emit("spectrum", j);
    });

    // table -----------------------------------------------------------------
    auto* table = app.add_subcommand("table", "Upper bounds on the third side");
    std::string table_colors = "2", table_range = "3..12";
    std::string table_csv, table_md, table_surface;
    table->add_option("--c", table_colors);
    table->add_option("--range", table_range, "Side range LO..HI for both axes");
    table->add_option("--csv", table_csv, "Write matrix CSV here");
    table->add_option("--md", table_md, "Write aligned markdown here");
    table->add_option("--surface", table_surface, "Write (a1,a2,a3) triples here");
    table->callback([&] {
        const auto dots = table_range.find("..");
        if (dots == std::string::npos)
            throw CLI::ValidationError("range must look like 3..12");
        pipeline::TableOptions options;
        options.a1_min = options.a2_min = std::stoll(table_range.substr(0, dots));
        options.a1_max = options.a2_max = std::stoll(table_range.substr(dots + 2));
        options.budget = global.budget();
        const auto result = pipeline::a3_table(Int(table_colors), options);
        Json j;
        j["range"] = table_range;
        j["cells"] = Json::array();
        for (const auto& cell : result.entries) {
            Json c;
            c["a1"] = cell.a1;
            c["a2"] = cell.a2;
            c["a3"] = cell.a3_bound ? Json(cell.a3_bound->str()) : Json(nullptr);
            c["method"] = pipeline::to_string(cell.method);
            if (cell.t_used) {
                c["t"] = cell.t_used->str();
                c["t_exact"] = cell.t_exact;
            }
            j["cells"].push_back(c);
        }
        j["csv"] = result.to_csv();
        if (!table_csv.empty()) write_file(table_csv, result.to_csv());
        if (!table_md.empty()) write_file(table_md, result.to_markdown());
        if (!table_surface.empty()) write_file(table_surface, result.to_surface_csv());
        emit("table", j);
    });

    // obstructions ---------------------------------------------------------
    auto* obstructions = app.add_subcommand("obstructions", "Minimal guaranteed grids");
    std::string obs_colors, obs_caps;
    int obs_d = 2;
    std::string obs_witness_dir;
    obstructions->add_option("--c", obs_colors)->required();
    obstructions->add_option("--d", obs_d)->required();
    obstructions->add_option("--caps", obs_caps, "Per-coordinate caps, e.g. 8x30")->required();
    obstructions->add_option("--witness-dir", obs_witness_dir,
                             "Write decrement witness colorings here");
    obstructions->callback([&] {
        auto set = search::obstruction_set(Int(obs_colors), obs_d, Grid::parse(obs_caps),
                                           global.budget());
        Json j;
        j["c"] = obs_colors;
        j["d"] = obs_d;
        j["caps"] = set.caps.to_string();
        j["frontier_complete"] = set.frontier_complete;
        j["last_coordinate_bound"] = set.last_coordinate_bound.str();
        j["caps_provably_cover_last"] = set.caps_provably_cover_last;
        j["members"] = Json::array();
        for (auto& member : set.members) {
            Json m;
            m["grid"] = member.grid.to_string();
            m["guaranteed"] = member.guaranteed.to_json();
            m["decrements"] = Json::array();
            for (auto& witness : member.decrement_witnesses) {
                if (!obs_witness_dir.empty() && witness.witness) {
                    const std::string path = obs_witness_dir + "/witness_" +
                                             member.grid.to_string() + "_" +
                                             witness.grid->to_string() + ".txt";
                    save_coloring_file(path, *witness.witness);
                    witness.witness_file = path;
                    witness.witness.reset();
                }
                m["decrements"].push_back(witness.to_json());
            }
            j["members"].push_back(m);
        }
        emit("obstructions", j);
    });

    // mt-color ---------------------------------------------------------------
    auto* mt = app.add_subcommand("mt-color", "Resampling colorer");
    std::string mt_colors, mt_grid, mt_out;
    std::int64_t mt_max_resamples = 100000;
    mt->add_option("--c", mt_colors)->required();
    mt->add_option("--grid", mt_grid)->required();
    mt->add_option("--max-resamples", mt_max_resamples);
    mt->add_option("--out", mt_out, "Write the coloring here on success");
    mt->callback([&] {
        const auto result = search::moser_tardos_color(Int(mt_colors), Grid::parse(mt_grid),
                                                       global.seed, mt_max_resamples);
        Json j;
        j["success"] = result.coloring.has_value();
        j["resamples"] = result.resamples;
        j["seed"] = global.seed;
        if (result.coloring) {
            j["monochromatic_boxes"] = count_monochromatic_boxes(*result.coloring).str();
            if (!mt_out.empty()) {
                save_coloring_file(mt_out, *result.coloring);
                j["file"] = mt_out;
            }
        }
        emit("mt-color", j);
    });

    // verify ------------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "Re-validate a certificate or witness file");
    std::string verify_certificate_path, verify_coloring_path;
    verify->add_option("--certificate", verify_certificate_path, "Certificate JSON file");
    verify->add_option("--coloring", verify_coloring_path, "Coloring witness file");
    verify->callback([&] {
        Json j;
        if (!verify_certificate_path.empty()) {
            std::ifstream in(verify_certificate_path);
            if (!in) throw std::runtime_error("cannot open " + verify_certificate_path);
            Json doc = Json::parse(in);
            const Certificate cert = Certificate::from_json(doc);
            std::string why;
            const bool ok = verify_certificate(cert, &why);
            j["valid"] = ok;
            if (!ok) j["why"] = why;
        } else if (!verify_coloring_path.empty()) {
            const Coloring coloring = load_coloring_file(verify_coloring_path);
            const Int boxes = count_monochromatic_boxes(coloring);
            j["grid"] = coloring.grid().to_string();
            j["colors"] = coloring.colors();
            j["monochromatic_boxes"] = boxes.str();
            j["box_free"] = boxes == 0;
            j["valid"] = true;
        } else {
            throw CLI::ValidationError("verify needs --certificate or --coloring");
        }
        emit("verify", j);
    });

    // Global flags remain usable after the subcommand name.
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& error) {
        Json doc;
        doc["schema"] = 1;
        doc["error"] = error.what();
        std::cout << doc.dump(2) << '\n';
        return 1;
    }
}

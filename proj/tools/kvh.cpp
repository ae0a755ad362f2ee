// kvh: exact homology engine for Koszul-Vinberg algebras, algebroid models,
// and the Poisson/contact toolchain built on them.
//
// Exit codes: 0 all verdicts pass, 1 verdict failure, 2 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "kvh/report.hpp"

using namespace kvh;

namespace {

struct Common {
    std::string field = "Q";
    int qmax = 2;
    int degree = 2;
    int jet = 1;
    std::string grouping = "A";
    std::string lift_mode = "zero-section";
    std::string out_path;
};

SessionConfig session_of(const Common& c) {
    SessionConfig cfg;
    cfg.field = c.field == "Qi" ? FieldTag::Qi : FieldTag::Q;
    cfg.qmax = c.qmax;
    cfg.degree = c.degree;
    cfg.jet = c.jet;
    cfg.boundary_grouping = c.grouping.at(0);
    cfg.lift_mode = c.lift_mode;
    cfg.seed = Rng::seed_from_env();
    cfg.validate();
    return cfg;
}

void add_common(CLI::App* app, Common& c) {
    app->add_option("--field", c.field, "coefficient field")->check(CLI::IsMember({"Q", "Qi"}));
    app->add_option("--qmax", c.qmax, "maximum chain degree");
    app->add_option("--degree", c.degree, "polynomial truncation degree");
    app->add_option("--jet", c.jet, "jet order bound");
    app->add_option("--boundary-grouping", c.grouping, "boundary insertion-term grouping")
        ->check(CLI::IsMember({"A", "B"}));
    app->add_option("--lift-mode", c.lift_mode, "Poisson lift mode")
        ->check(CLI::IsMember({"zero-section", "local-24"}));
    app->add_option("--out", c.out_path, "report output path");
}

void emit(const Json& report, const std::string& path) {
    std::string text = report.dump(2);
    text += "\n";
    if (path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(path);
        if (!f) throw std::invalid_argument("cannot open output path " + path);
        f << text;
    }
}

Json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open input " + path);
    return Json::parse(f);
}

struct Instance {
    KVAlgebra algebra;
    KVModule module;
    std::optional<SplitAlgebra> split;
    std::string name;
};

Instance builtin_instance(const std::string& name, const Common& c) {
    Instance inst;
    inst.name = name;
    if (name == "e2") {
        inst.algebra = e2_algebra();
        inst.module = KVModule::trivial(4, 1);
    } else if (name == "broken") {
        inst.algebra = broken_fixture();
        inst.module = KVModule::trivial(2, 1);
    } else if (name == "empty") {
        inst.algebra = zero_algebra(0);
        inst.module = KVModule::trivial(0, 1);
    } else if (name == "jet-line") {
        JetLineModel m(c.degree);
        SplitAlgebra split = m.to_finite();
        inst.algebra = split.G;
        inst.module = split.W;
        inst.split = std::move(split);
    } else if (name == "cotangent") {
        CotangentModel m(1, c.degree);
        SplitAlgebra split = m.to_finite();
        inst.algebra = split.G;
        inst.module = split.W;
        inst.split = std::move(split);
    } else {
        throw std::invalid_argument("unknown builtin '" + name + "'");
    }
    return inst;
}

Instance resolve_instance(const std::string& builtin, const std::string& input, const Common& c) {
    if (!builtin.empty()) return builtin_instance(builtin, c);
    if (input.empty()) throw std::invalid_argument("need --builtin or --input");
    Json j = load_json(input);
    Instance inst;
    inst.name = input;
    inst.algebra = algebra_from_json(j);
    if (j.contains("left"))
        inst.module = module_from_json(j, inst.algebra);
    else
        inst.module = KVModule::trivial(inst.algebra.dim(), 1);
    return inst;
}

Grouping grouping_of(const Common& c) { return c.grouping == "B" ? Grouping::B : Grouping::A; }

int finish(Json& report, const SessionConfig& cfg, const Common& c, bool pass) {
    report["provenance"] = provenance_json(cfg);
    report["pass"] = pass;
    emit(report, c.out_path);
    return pass ? 0 : 1;
}

int cmd_check(const std::string& builtin, const std::string& input, const Common& c) {
    SessionConfig cfg = session_of(c);
    Instance inst = resolve_instance(builtin, input, c);

    Json report;
    report["command"] = "check";
    report["input"] = inst.name;
    Json verdicts = Json::array();

    Verdict kv = is_kv(inst.algebra);
    verdicts.push_back({{"name", "is_kv"}, {"result", verdict_json(kv)}});
    Verdict mod = is_kv_module(inst.algebra, inst.module);
    verdicts.push_back({{"name", "is_kv_module"}, {"result", verdict_json(mod)}});
    Verdict d2 = Verdict::ok();
    if (kv.pass && mod.pass) {
        ChainComplex cx(inst.algebra, inst.module, grouping_of(c));
        d2 = cx.verify_d2(c.qmax);
    } else {
        d2 = Verdict::fail("skipped: axioms fail");
    }
    verdicts.push_back({{"name", "verify_d2"}, {"result", verdict_json(d2)}});
    report["verdicts"] = std::move(verdicts);
    return finish(report, cfg, c, kv.pass && mod.pass && d2.pass);
}

int cmd_homology(const std::string& builtin, const std::string& input, const Common& c) {
    SessionConfig cfg = session_of(c);
    Instance inst = resolve_instance(builtin, input, c);

    Json report;
    report["command"] = "homology";
    report["input"] = inst.name;

    Verdict kv = is_kv(inst.algebra);
    Verdict mod = is_kv_module(inst.algebra, inst.module);
    if (!kv.pass || !mod.pass) {
        report["error"] = "input fails the axiom checks: " + (kv.pass ? mod.witness : kv.witness);
        report["provenance"] = provenance_json(cfg);
        emit(report, c.out_path);
        return 1;
    }
    ComplexReport rep = homology(inst.algebra, inst.module, c.qmax);
    report["degrees"] = complex_report_json(rep);

    bool pass = true;
    if (inst.split) {
        Json bigraded = Json::array();
        Json van = Json::array();
        for (int q = 1; q <= std::min(c.qmax, 2); ++q) {
            Json entry;
            entry["q"] = q;
            auto table = bigraded_homology(*inst.split, q);
            entry["table"] = bigraded_json(table);
            int sum = 0;
            for (auto& e : table) {
                sum += e.dim_homology;
                if (e.s == 0)
                    van.push_back({{"q", q}, {"r", e.r}, {"dim_homology", e.dim_homology}});
            }
            entry["sum_over_bidegrees"] = sum;
            entry["dim_homology"] = rep.degrees[q].dim_homology;
            bigraded.push_back(std::move(entry));
        }
        report["bigraded"] = std::move(bigraded);
        report["pure_algebra_column"] = std::move(van);

        // the explicit contracting homotopy on sampled 2-cycles
        ChainComplex cx(inst.split->G, inst.split->W, grouping_of(c));
        SubspaceBasis ker = kernel_basis(cx.boundary_matrix(2));
        Rng rng(cfg.seed);
        bool homotopy_ok = true;
        const int samples = 5;
        for (int t = 0; t < samples; ++t) {
            SparseVec combo;
            for (auto& v : ker.vectors) {
                Scalar s = rng.small_scalar(2);
                if (!s.is_zero()) combo = sparse_axpy(combo, s, v);
            }
            HomotopyResult h = vanishing_homotopy(*inst.split, cx.unflatten(2, combo));
            homotopy_ok = homotopy_ok && h.identity_holds;
        }
        report["homotopy"] = {{"sampled_cycles", samples}, {"identity_holds", homotopy_ok}};
        pass = pass && homotopy_ok;
    }
    return finish(report, cfg, c, pass);
}

int cmd_poisson(const std::string& sub, const std::string& input, int m, int n, const Common& c) {
    SessionConfig cfg = session_of(c);
    Json report;
    report["command"] = "poisson " + sub;
    bool pass = true;

    if (sub == "extract") {
        Json j = load_json(input);
        int mm = j.contains("m") ? j.at("m").get<int>() : m;
        CotangentModel model(mm, c.degree);
        MultiDiffChain theta = chain_from_json(j.at("chain"), model.nvars());
        KvCycleVerdicts cyc = is_kv_cycle(model, theta);
        report["cycle"] = kv_cycle_json(cyc);
        ExtractionResult ex = extract_poisson(model, theta);
        report["order"] = ex.order;
        report["ok"] = ex.ok;
        if (!ex.failure.empty()) report["failure"] = ex.failure;
        Json comps = Json::array();
        for (int i = 0; i < model.nvars(); ++i)
            for (int k = i + 1; k < model.nvars(); ++k)
                if (!ex.pi.component(i, k).is_zero())
                    comps.push_back({{"i", i + 1}, {"j", k + 1}, {"coeff", poly_json(ex.pi.component(i, k))}});
        report["bivector"] = std::move(comps);
        report["jacobi"] = verdict_json(ex.jacobi);
        report["leibniz"] = verdict_json(ex.leibniz);
        report["parallel"] = verdict_json(parallel_check(ex.pi));
        // first-integral closure on the base pullbacks
        Verdict fic = Verdict::ok();
        auto base_monos = monomials_up_to(mm, 0, std::min(2, c.degree));
        for (auto& fm : base_monos)
            for (auto& gm : base_monos) {
                Mono ff(model.nvars(), 0), gg(model.nvars(), 0);
                for (int k = 0; k < mm; ++k) {
                    ff[model.q_var(k)] = fm[k];
                    gg[model.q_var(k)] = gm[k];
                }
                Verdict v = first_integral_closure(model, theta, Poly::monomial(model.nvars(), ff),
                                                   Poly::monomial(model.nvars(), gg));
                if (!v.pass) fic = v;
            }
        report["first_integral_closure"] = verdict_json(fic);
        pass = ex.ok && fic.pass;
    } else if (sub == "lift" || sub == "roundtrip") {
        Json j = load_json(input);
        int mm = j.contains("m") ? j.at("m").get<int>() : m;
        Bivector base = bivector_from_json(j.at("bivector"), mm);
        CotangentModel model(mm, c.degree);
        if (sub == "lift") {
            LiftMode mode = c.lift_mode == "local-24" ? LiftMode::Local24 : LiftMode::ZeroSection;
            LiftResult lift = lift_poisson(model, base, mode);
            report["mode"] = c.lift_mode;
            report["theta"] = chain_json(lift.theta);
            report["cycle"] = kv_cycle_json(lift.cycle);
            report["jacobi"] = verdict_json(lift.jacobi);
            report["leibniz"] = verdict_json(lift.leibniz);
            report["vertical_compat"] = verdict_json(lift.vertical_compat);
            pass = lift.jacobi.pass && lift.leibniz.pass &&
                   (mode == LiftMode::Local24 || (lift.cycle.closed.pass && lift.cycle.skew_closed.pass));
        } else {
            Rng rng(Rng::seed_from_env());
            RoundtripResult r = roundtrip_check(model, base, rng);
            report["direct_exact"] = r.direct_exact;
            report["extract_consistent"] = r.extract_consistent;
            report["boundaries_project_to_zero"] = r.boundaries_project_to_zero;
            pass = r.pass;
        }
    } else if (sub == "contact") {
        ContactGeometry geom(n, c.degree);
        ContactChecks checks = contact_cycle_checks(geom);
        report["checks"] = contact_checks_json(checks);
        InvariantChain rc = invariant_chain(geom, 0, geom.model.contact_n());
        Json eq = Json::array();
        for (auto& [label, phi] :
             std::vector<std::pair<std::string, PolyDiffeo>>{
                 {"z-translation", z_translation(geom, Scalar(1, 2))},
                 {"linear-contacto", linear_contacto(geom, Scalar(2))}}) {
            Verdict v = check_equivariance(geom, rc, phi, 2);
            eq.push_back({{"map", label}, {"result", verdict_json(v)}});
            if (!v.pass) pass = false;
        }
        report["equivariance_reeb_chain"] = std::move(eq);
        pass = pass && checks.all_gating();
    } else {
        throw std::invalid_argument("unknown poisson subcommand");
    }
    return finish(report, cfg, c, pass);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact homology engine for Koszul-Vinberg algebras and algebroid models"};
    app.require_subcommand(1);

    Common c;
    std::string builtin, input, poisson_sub;
    int m = 1, n = 1;

    CLI::App* check = app.add_subcommand("check", "verify algebra/module axioms and delta^2 = 0");
    check->add_option("--builtin", builtin, "built-in instance (e2, broken, empty, jet-line, cotangent)");
    check->add_option("--input", input, "JSON input file");
    add_common(check, c);

    CLI::App* hom = app.add_subcommand("homology", "homology dims, ranks, representatives");
    hom->add_option("--builtin", builtin, "built-in instance");
    hom->add_option("--input", input, "JSON input file");
    add_common(hom, c);

    CLI::App* poi = app.add_subcommand("poisson", "Poisson extraction/lift/roundtrip/contact");
    poi->add_option("subcommand", poisson_sub, "extract | lift | roundtrip | contact")->required();
    poi->add_option("--input", input, "JSON input file");
    poi->add_option("--m", m, "base dimension");
    poi->add_option("--n", n, "contact dimension");
    add_common(poi, c);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(builtin, input, c);
        if (hom->parsed()) return cmd_homology(builtin, input, c);
        if (poi->parsed()) return cmd_poisson(poisson_sub, input, m, n, c);
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

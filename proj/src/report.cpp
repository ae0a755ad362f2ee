#include "kvh/report.hpp"

#include <sstream>
#include <stdexcept>

namespace kvh {

void SessionConfig::validate() const {
    if (qmax < 0 || qmax > 4) throw std::invalid_argument("config: qmax out of range (0..4)");
    if (degree < 1 || degree > 5) throw std::invalid_argument("config: degree out of range (1..5)");
    if (jet < 0 || jet > 2) throw std::invalid_argument("config: jet out of range (0..2)");
    if (boundary_grouping != 'A' && boundary_grouping != 'B')
        throw std::invalid_argument("config: boundary grouping must be A or B");
    if (lift_mode != "zero-section" && lift_mode != "local-24")
        throw std::invalid_argument("config: unknown lift mode");
}

SessionConfig config_from_json(const Json& j) {
    SessionConfig cfg;
    for (auto& [key, val] : j.items()) {
        if (key == "field") {
            std::string f = val.get<std::string>();
            if (f == "Q")
                cfg.field = FieldTag::Q;
            else if (f == "Qi")
                cfg.field = FieldTag::Qi;
            else
                throw std::invalid_argument("config: field must be Q or Qi");
        } else if (key == "qmax") {
            cfg.qmax = val.get<int>();
        } else if (key == "degree" || key == "d") {
            cfg.degree = val.get<int>();
        } else if (key == "jet" || key == "k") {
            cfg.jet = val.get<int>();
        } else if (key == "boundary_grouping") {
            cfg.boundary_grouping = val.get<std::string>().at(0);
        } else if (key == "lift_mode") {
            cfg.lift_mode = val.get<std::string>();
        } else if (key == "seed") {
            cfg.seed = val.get<uint64_t>();
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

Json sparse_json(const SparseVec& v) {
    Json out = Json::array();
    for (auto& [i, s] : v) out.push_back(Json::array({i, s.str()}));
    return out;
}

Json poly_json(const Poly& p) {
    Json out = Json::object();
    for (auto& [m, c] : p.terms()) {
        std::ostringstream key;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i) key << ",";
            key << static_cast<int>(m[i]);
        }
        out[key.str()] = c.str();
    }
    return out;
}

Poly poly_from_json(const Json& j, int nvars) {
    Poly p(nvars);
    for (auto& [key, val] : j.items()) {
        Mono m(nvars, 0);
        std::stringstream ss(key);
        std::string tok;
        int v = 0;
        while (std::getline(ss, tok, ',')) {
            if (v >= nvars) throw std::invalid_argument("poly: exponent tuple too long");
            m[v++] = static_cast<uint8_t>(std::stoi(tok));
        }
        if (v != nvars) throw std::invalid_argument("poly: exponent tuple too short");
        p.add_term(m, Scalar::parse(val.get<std::string>()));
    }
    return p;
}

Json verdict_json(const Verdict& v) {
    Json out;
    out["pass"] = v.pass;
    if (!v.pass) out["witness"] = v.witness;
    return out;
}

Json provenance_json(const SessionConfig& cfg, bool truncation_loss) {
    Json out;
    out["schema_version"] = 1;
    out["field"] = field_name(cfg.field);
    out["qmax"] = cfg.qmax;
    out["degree"] = cfg.degree;
    out["jet"] = cfg.jet;
    out["boundary_grouping"] = std::string(1, cfg.boundary_grouping);
    out["lift_mode"] = cfg.lift_mode;
    out["seed"] = cfg.seed;
    out["truncation_loss"] = truncation_loss;
    Json conv;
    conv["scalar_format"] = "p/q and p/q+r/s i, canonical reduced";
    conv["ce_sign"] = "d w(a_1..a_{q+1}) = sum_{i<j} (-1)^{i+j+1} w([a_i,a_j], ...)";
    conv["chain_basis_order"] = "lexicographic in the argument multi-index, value index last";
    conv["pi_convention"] = "Pi theta = (theta - theta^T)/2";
    conv["contact_ordering"] = "q_1..q_n, p_1..p_n, z";
    conv["pi2_reading"] =
        "transverse Poisson tensor of dalpha (z-flat lift); sharp(alpha^(dalpha)^(n-1)) "
        "reported alongside";
    out["conventions"] = std::move(conv);
    return out;
}

Json complex_report_json(const ComplexReport& rep) {
    Json out = Json::array();
    for (auto& d : rep.degrees) {
        Json e;
        e["q"] = d.q;
        e["dim_chains"] = d.dim_chains;
        e["rank_boundary"] = d.rank_boundary;
        e["dim_cycles"] = d.dim_cycles;
        e["dim_homology"] = d.dim_homology;
        Json reps = Json::array();
        for (auto& r : d.representatives) reps.push_back(sparse_json(r));
        e["representatives"] = std::move(reps);
        out.push_back(std::move(e));
    }
    return out;
}

Json bigraded_json(const std::vector<BigradedEntry>& table) {
    Json out = Json::array();
    for (auto& e : table) {
        Json j;
        j["r"] = e.r;
        j["s"] = e.s;
        j["dim_component"] = e.dim_component;
        j["dim_cycles"] = e.dim_cycles;
        j["dim_boundaries"] = e.dim_boundaries;
        j["dim_homology"] = e.dim_homology;
        out.push_back(std::move(j));
    }
    return out;
}

Json obstruction_json(const ObstructionReport& rep) {
    Json out;
    out["dim_h2_chain"] = rep.dim_h2_chain;
    out["dim_h2_ce"] = rep.dim_h2_ce;
    out["rank_pi"] = rep.rank_pi;
    out["dim_ker_pi"] = rep.dim_ker_pi;
    out["dim_obstruction"] = rep.dim_obstruction;
    Json cols = Json::array();
    for (int c = 0; c < rep.induced_pi.cols(); ++c) cols.push_back(sparse_json(rep.induced_pi.column(c)));
    out["induced_pi_columns"] = std::move(cols);
    out["exactness"] = rep.dim_h2_chain == rep.dim_ker_pi + rep.rank_pi &&
                       rep.dim_obstruction == rep.dim_h2_ce - rep.rank_pi;
    return out;
}

Json kv_cycle_json(const KvCycleVerdicts& v) {
    Json out;
    out["chain_symmetry"] = verdict_json(v.chain);
    out["closed"] = verdict_json(v.closed);
    out["skew_closed"] = verdict_json(v.skew_closed);
    out["all"] = v.all();
    return out;
}

Json contact_checks_json(const ContactChecks& c) {
    Json out;
    out["reeb_kv"] = verdict_json(c.reeb_kv);
    out["d1_reeb"] = verdict_json(c.d1_reeb);
    out["d1_alpha_reeb"] = verdict_json(c.d1_alpha_reeb);
    out["d2_pi2_sharp"] = verdict_json(c.d2_pi2_sharp);
    out["d2_pi2_transverse"] = verdict_json(c.d2_pi2_transverse);
    out["jacobi_pi2"] = verdict_json(c.jacobi_pi2);
    out["jacobi_pi2_sharp_informational"] = verdict_json(c.jacobi_pi2_sharp);
    out["lr_pi2"] = verdict_json(c.lr_pi2);
    out["transverse_bracket"] = verdict_json(c.transverse_bracket);
    out["z_degenerate"] = verdict_json(c.z_degenerate);
    out["lr_volume"] = verdict_json(c.lr_volume);
    out["pi2_not_exact_truncated"] = verdict_json(c.pi2_not_exact);
    out["reeb_not_exact_truncated"] = verdict_json(c.reeb_not_exact);
    out["scope"] = "class nonvanishing certified within the truncated finite complex only";
    return out;
}

Json algebra_json(const KVAlgebra& a) {
    Json out;
    out["dim"] = a.dim();
    out["field"] = field_name(a.field());
    out["labels"] = a.labels();
    Json mul = Json::array();
    for (int i = 0; i < a.dim(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < a.dim(); ++k) {
            Json entry = Json::array();
            std::vector<Scalar> dense = sparse_to_dense(a.product(i, k), a.dim());
            for (auto& s : dense) entry.push_back(s.str());
            row.push_back(std::move(entry));
        }
        mul.push_back(std::move(row));
    }
    out["mul"] = std::move(mul);
    return out;
}

KVAlgebra algebra_from_json(const Json& j) {
    if (!j.contains("dim")) throw std::invalid_argument("algebra: missing dim");
    int dim = j.at("dim").get<int>();
    FieldTag field = FieldTag::Q;
    if (j.contains("field")) {
        std::string f = j.at("field").get<std::string>();
        if (f == "Qi")
            field = FieldTag::Qi;
        else if (f != "Q")
            throw std::invalid_argument("algebra: field must be Q or Qi");
    }
    KVAlgebra a(dim, field);
    if (j.contains("labels")) {
        std::vector<std::string> labels = j.at("labels").get<std::vector<std::string>>();
        if (static_cast<int>(labels.size()) != dim)
            throw std::invalid_argument("algebra: labels size mismatch");
        a.set_labels(std::move(labels));
    }
    const Json& mul = j.at("mul");
    if (static_cast<int>(mul.size()) != dim) throw std::invalid_argument("algebra: mul shape");
    for (int i = 0; i < dim; ++i) {
        if (static_cast<int>(mul[i].size()) != dim) throw std::invalid_argument("algebra: mul shape");
        for (int k = 0; k < dim; ++k) {
            const Json& row = mul[i][k];
            if (static_cast<int>(row.size()) != dim) throw std::invalid_argument("algebra: mul shape");
            SparseVec v;
            for (int t = 0; t < dim; ++t) {
                Scalar s = Scalar::parse(row[t].get<std::string>(), field);
                if (!s.is_zero()) v.emplace_back(t, s);
            }
            a.set_product(i, k, std::move(v));
        }
    }
    return a;
}

KVModule module_from_json(const Json& j, const KVAlgebra& a) {
    int dimW = j.at("dimW").get<int>();
    KVModule m(a.dim(), dimW);
    const Json& left = j.at("left");
    const Json& right = j.at("right");
    for (int i = 0; i < a.dim(); ++i)
        for (int w = 0; w < dimW; ++w) {
            SparseVec v;
            for (int t = 0; t < dimW; ++t) {
                Scalar s = Scalar::parse(left[i][w][t].get<std::string>(), a.field());
                if (!s.is_zero()) v.emplace_back(t, s);
            }
            m.set_left(i, w, std::move(v));
        }
    for (int w = 0; w < dimW; ++w)
        for (int i = 0; i < a.dim(); ++i) {
            SparseVec v;
            for (int t = 0; t < dimW; ++t) {
                Scalar s = Scalar::parse(right[w][i][t].get<std::string>(), a.field());
                if (!s.is_zero()) v.emplace_back(t, s);
            }
            m.set_right(w, i, std::move(v));
        }
    return m;
}

namespace {

Mono mono_from_string(const std::string& key, int nvars) {
    Mono m(nvars, 0);
    std::stringstream ss(key);
    std::string tok;
    int v = 0;
    while (std::getline(ss, tok, ',')) {
        if (v >= nvars) throw std::invalid_argument("jet key too long");
        m[v++] = static_cast<uint8_t>(std::stoi(tok));
    }
    if (v != nvars) throw std::invalid_argument("jet key too short");
    return m;
}

std::string mono_to_string(const Mono& m) {
    std::ostringstream key;
    for (size_t i = 0; i < m.size(); ++i) {
        if (i) key << ",";
        key << static_cast<int>(m[i]);
    }
    return key.str();
}

}  // namespace

MultiDiffChain chain_from_json(const Json& j, int nvars) {
    int arity = j.at("arity").get<int>();
    MultiDiffChain c(arity, nvars);
    for (auto& term : j.at("terms")) {
        JetKey key;
        for (auto& jet : term.at("jets")) key.push_back(mono_from_string(jet.get<std::string>(), nvars));
        if (static_cast<int>(key.size()) != arity)
            throw std::invalid_argument("chain: jet tuple arity mismatch");
        c.add_term(key, poly_from_json(term.at("coeff"), nvars));
    }
    return c;
}

Json chain_json(const MultiDiffChain& c) {
    Json out;
    out["arity"] = c.arity();
    Json terms = Json::array();
    for (auto& [key, coeff] : c.terms()) {
        Json t;
        Json jets = Json::array();
        for (auto& m : key) jets.push_back(mono_to_string(m));
        t["jets"] = std::move(jets);
        t["coeff"] = poly_json(coeff);
        terms.push_back(std::move(t));
    }
    out["terms"] = std::move(terms);
    return out;
}

Bivector bivector_from_json(const Json& j, int nvars) {
    Bivector p(nvars);
    for (auto& entry : j) {
        int i = entry.at("i").get<int>() - 1;
        int k = entry.at("j").get<int>() - 1;
        if (i < 0 || k < 0 || i >= nvars || k >= nvars)
            throw std::invalid_argument("bivector: index out of range");
        Poly c = poly_from_json(entry.at("coeff"), nvars);
        p.set_component(i, k, p.component(i, k) + c);
    }
    return p;
}

}  // namespace kvh

#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "kvh/contact.hpp"
#include "kvh/kv_complex.hpp"
#include "kvh/lie_bridge.hpp"
#include "kvh/models.hpp"
#include "kvh/poisson.hpp"

namespace kvh {

using Json = nlohmann::ordered_json;

// Session-wide configuration; bounds are validated against the documented
// limits and unknown keys in config files are rejected.
struct SessionConfig {
    FieldTag field = FieldTag::Q;
    int qmax = 2;
    int degree = 2;
    int jet = 1;
    char boundary_grouping = 'A';
    std::string lift_mode = "zero-section";
    uint64_t seed = 0;

    void validate() const;
};

SessionConfig config_from_json(const Json& j);

// ---- serialization ----------------------------------------------------------

Json sparse_json(const SparseVec& v);
Json poly_json(const Poly& p);
Poly poly_from_json(const Json& j, int nvars);
Json verdict_json(const Verdict& v);
Json provenance_json(const SessionConfig& cfg, bool truncation_loss = false);

Json complex_report_json(const ComplexReport& rep);
Json bigraded_json(const std::vector<BigradedEntry>& table);
Json obstruction_json(const ObstructionReport& rep);
Json kv_cycle_json(const KvCycleVerdicts& v);
Json contact_checks_json(const ContactChecks& c);

// ---- input parsing ----------------------------------------------------------

Json algebra_json(const KVAlgebra& a);
KVAlgebra algebra_from_json(const Json& j);
// requires "left"/"right" tensors next to the algebra data
KVModule module_from_json(const Json& j, const KVAlgebra& a);
Bivector bivector_from_json(const Json& j, int nvars);
// {"arity":2, "terms":[{"jets":["1,0","0,1"], "coeff":{"0,0":"1/2"}}, ...]}
MultiDiffChain chain_from_json(const Json& j, int nvars);
Json chain_json(const MultiDiffChain& c);

}  // namespace kvh

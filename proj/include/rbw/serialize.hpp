#pragma once

// JSON forms of the reports. Big integers are decimal strings; ring
// elements use the ring's own notation. Schemas live in docs/.

#include "rbw/certify.hpp"

#include "json.hpp"

namespace rbw {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json integers_json(const std::vector<Integer>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(x.get_str());
    return out;
}

inline Json presentation_json(const AbPresentation& P, bool with_relations = true) {
    Json j;
    j["generators"] = P.generators();
    j["invariants"] = integers_json(P.invariants());
    if (with_relations) {
        Json trip = Json::array();
        for (std::size_t r = 0; r < P.relations().size(); ++r)
            for (const auto& [c, v] : P.relations()[r]) trip.push_back(Json::array({r, c, v.get_str()}));
        j["relations"] = {{"rows", P.relations().size()}, {"triplets", trip}};
    }
    return j;
}

inline Json ring_json(const Ring& R) {
    const auto& u = R.units();
    auto elems = [&](const std::vector<Elem>& xs) {
        Json a = Json::array();
        for (Elem x : xs) a.push_back(R.format(x));
        return a;
    };
    Json j;
    j["ring"] = R.name();
    j["size"] = R.size();
    j["characteristic"] = R.characteristic();
    j["field"] = R.is_field();
    j["local"] = R.is_local();
    if (R.is_local()) j["residue_field"] = R.residue_field_size();
    j["units"] = u.units.size();
    j["w_set"] = elems(u.wset);
    j["square_classes"] = elems(u.class_reps);
    j["mu2"] = elems(u.mu2);
    j["unit_group"] = integers_json(unit_group_structure(R).group.invariants());
    if (u.generator) j["generator"] = R.format(*u.generator);
    return j;
}

inline Json scissors_json(const ScissorsResult& s, bool relations = false) {
    Json j;
    j["ring"] = s.ring;
    j["w_count"] = s.w_count;
    j["square_classes"] = s.class_count;
    j["relator_pairs"] = s.relator_pairs;
    j["P"] = presentation_json(s.P, relations);
    j["RP"] = presentation_json(s.RP, relations);
    j["S2"] = integers_json(s.S2.invariants());
    j["B"] = integers_json(s.B.group.invariants());
    j["RP1"] = integers_json(s.RP1.group.invariants());
    j["RB"] = integers_json(s.RB.group.invariants());
    j["RB_by_intersection"] = integers_json(s.rb_by_intersection);
    j["checks"] = {{"lambda_kills_relators", s.lambda_kills_relators},
                   {"lambda1_kills_relators", s.lambda1_kills_relators},
                   {"lambda2_kills_relators", s.lambda2_kills_relators},
                   {"lambda1_lands_in_I2", s.lambda1_lands_in_I2},
                   {"lambda2_factors_through_P", s.lambda2_factors_through_P},
                   {"rb_two_ways_agree", s.rb_two_ways_agree},
                   {"chain_verified", s.chain_verified}};
    j["digests"] = {{"P", s.p_digest}, {"RP", s.rp_digest}};
    return j;
}

inline Json exactness_json(const ExactnessReport& r, bool timing = false) {
    Json j;
    j["ring"] = r.ring;
    j["residue_field"] = r.residue_field;
    Json dims = Json::array();
    for (const auto& d : r.dims) {
        Json e = {{"dim", d.dim}, {"generators", d.generators}, {"rank_out", d.rank_out}, {"rank_in", d.rank_in},
                  {"homology", integers_json(d.homology)}, {"exact", d.exact}};
        if (timing) e["seconds"] = d.seconds;
        dims.push_back(std::move(e));
    }
    j["dims"] = std::move(dims);
    j["all_exact"] = r.all_exact();
    if (r.budget_note) j["budget_note"] = *r.budget_note;
    return j;
}

inline Json unit_chain_json(const Ring& R, const UnitBarChain& c) {
    Json terms = Json::array();
    for (const auto& [t, k] : c.terms()) {
        Json tu = Json::array();
        for (Elem x : t) tu.push_back(R.format(x));
        terms.push_back({{"coef", k}, {"tuple", tu}});
    }
    return {{"degree", c.degree()}, {"terms", terms}};
}

inline Json tensor_chain_json(const ChainCalculus& C, const TensorChain& c) {
    Json terms = Json::array();
    for (const auto& [key, k] : c.terms()) {
        Json tu = Json::array(), x = Json::array();
        for (const auto& g : key.second) tu.push_back(C.sl2().format(g));
        for (auto l : key.first) x.push_back(C.lines().format(l));
        terms.push_back({{"coef", k}, {"tuple", tu}, {"x", x}});
    }
    return {{"degree", c.degree()}, {"level", c.level()}, {"terms", terms}};
}

inline Json certificate_json(const Certifier& cf, const Certificate& c) {
    const Ring& R = cf.ring();
    Json j;
    j["identity"] = c.identity;
    j["ring"] = c.ring;
    Json params = Json::object();
    for (const auto& [k, v] : c.params) params[k] = R.format(v);
    j["params"] = params;
    j["verdict"] = to_string(c.verdict);
    j["passed"] = c.passed();
    Json stages = Json::array();
    for (const auto& s : c.stages) stages.push_back({{"name", s.name}, {"ok", s.ok}, {"detail", s.detail}});
    j["stages"] = stages;
    j["computed"] = unit_chain_json(R, c.computed);
    j["expected"] = unit_chain_json(R, c.expected);
    Json w = Json::array();
    for (const auto& [k, v] : c.witnesses) w.push_back({{"kind", k}, {"chain", unit_chain_json(R, v)}});
    j["witnesses"] = w;
    if (c.verdict == Verdict::fail || !c.residual.empty()) j["residual"] = unit_chain_json(R, c.residual);
    Json inter = Json::array();
    for (const auto& [k, v] : c.tensors) inter.push_back({{"name", k}, {"chain", tensor_chain_json(cf.calculus(), v)}});
    for (const auto& [k, v] : c.chains) inter.push_back({{"name", k}, {"chain", unit_chain_json(R, v)}});
    j["intermediate"] = inter;
    j["notes"] = c.notes;
    return j;
}

inline Json flag_json(const ConditionFlag& f) {
    return {{"status", to_string(f.status)}, {"basis", f.basis}, {"detail", f.detail}};
}

inline Json conditions_json(const ConditionReport& r) {
    Json j;
    j["ring"] = r.ring;
    j["residue_field"] = r.residue_field;
    j["condition_1"] = flag_json(r.c1);
    j["condition_2"] = flag_json(r.c2);
    j["condition_3"] = flag_json(r.c3);
    j["inequality"] = r.inequality ? Json(*r.inequality) : Json(nullptr);
    Json d = Json::array();
    for (const auto& x : r.direct) d.push_back({{"n", x.n}, {"coinvariants", integers_json(x.coinvariants)}});
    j["direct"] = d;
    if (r.audit) j["audit"] = exactness_json(*r.audit);
    j["all_pass"] = r.all_pass();
    return j;
}

inline Json bw_json(const BWReport& r) {
    Json j;
    j["ring"] = r.ring;
    j["conditions"] = conditions_json(r.conditions);
    j["mu"] = integers_json(r.mu);
    j["tor"] = integers_json(r.tor);
    j["tor_order"] = order_of(r.tor).get_str();
    j["tor_sigma_fixed"] = integers_json(r.tor_fixed);
    j["RB"] = integers_json(r.rb);
    j["RB_lattice_path"] = integers_json(r.rb_check);
    j["snf_paths_agree"] = r.snf_paths_agree();
    j["B"] = integers_json(r.b);
    j["RB_equals_B"] = r.rb_equals_b;
    j["predicted_h3_order"] = r.predicted_h3 ? Json(r.predicted_h3->get_str()) : Json(nullptr);
    j["prediction_note"] = r.prediction_note;
    return j;
}

}  // namespace rbw

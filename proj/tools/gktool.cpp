#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gk/bogomolov.hpp"
#include "gk/cohomology.hpp"
#include "gk/constructors.hpp"
#include "gk/errors.hpp"
#include "gk/frobenius.hpp"
#include "gk/groupfile.hpp"
#include "gk/gz_classify.hpp"
#include "gk/rationality.hpp"
#include "json.hpp"

using nlohmann::ordered_json;
using namespace gk;

namespace {

Group load_group(const std::string& path, int cap) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open group file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return groupfile_to_group(groupfile_from_json(buf.str()), cap);
}

std::string join_params(const std::vector<long long>& params) {
    std::string s;
    for (long long p : params) s += (s.empty() ? "" : "_") + std::to_string(p);
    return s;
}

Group construct_group(const std::string& family, const std::vector<long long>& params,
                      long long q, int cap) {
    auto need = [&](std::size_t n) {
        if (params.size() != n)
            throw FormatError("family " + family + " expects " + std::to_string(n) +
                              " parameters");
    };
    if (family == "cyclic") {
        need(1);
        return cyclic_group((int)params[0]);
    }
    if (family == "abelian") {
        if (params.empty()) throw FormatError("abelian needs at least one invariant");
        std::vector<int> inv(params.begin(), params.end());
        return abelian_group(inv);
    }
    if (family == "symmetric") {
        need(1);
        return symmetric_group((int)params[0]);
    }
    if (family == "alternating") {
        need(1);
        return alternating_group((int)params[0]);
    }
    if (family == "dihedral") {
        need(1);
        return dihedral_group((int)params[0]);
    }
    if (family == "metacyclic") {
        need(3);
        return metacyclic(params[0], params[1], params[2], cap);
    }
    if (family == "quaternion") {
        need(1);
        return quaternion_generalized(params[0]);
    }
    if (family == "sl2") {
        need(1);
        return sl2(params[0], cap);
    }
    if (family == "gzII" || family == "gzIII" || family == "gzIV") {
        if (params.size() < 3 || params.size() > 6)
            throw FormatError("gz families expect m n r [l k t]");
        PresentationParams p;
        p.family = family.substr(2);
        p.m = params[0];
        p.n = params[1];
        p.r = params[2];
        if (params.size() > 3) p.l = params[3];
        if (params.size() > 4) p.k = params[4];
        if (params.size() > 5) p.t = params[5];
        return gz_type(p, cap);
    }
    if (family == "binary-icosahedral") {
        need(0);
        return binary_icosahedral(q == 0 ? 11 : q).group;
    }
    if (family == "gplus") {
        need(0);
        return g_plus(q == 0 ? 25 : q).model.group;
    }
    if (family == "rep-phi") {
        need(1);
        return rep_phi((int)params[0], q == 0 ? 73 : q).group;
    }
    if (family == "rep-psi") {
        need(1);
        return rep_psi((int)params[0], q == 0 ? 73 : q).group;
    }
    throw FormatError("unknown construction family: " + family);
}

ordered_json invariants_json(const AbelianInvariants& inv) {
    ordered_json j;
    j["factors"] = inv.factors;
    j["free_rank"] = inv.free_rank;
    j["order"] = inv.order();
    return j;
}

int run_analyze(const Group& g, bool json_out) {
    auto preds = structural_predicates(g);
    Group ab = quotient(g, preds.derived).group;
    auto abinv = abelian_invariants(ab);
    if (json_out) {
        ordered_json j;
        j["degree"] = g.degree();
        j["order"] = g.order();
        j["exponent"] = g.exponent();
        j["abelian"] = preds.is_abelian;
        j["cyclic"] = preds.is_cyclic;
        j["nilpotent"] = preds.is_nilpotent;
        j["solvable"] = preds.is_solvable;
        j["perfect"] = preds.is_perfect;
        j["center_order"] = preds.center.order();
        j["derived_order"] = preds.derived.order();
        j["abelianization"] = abinv;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "degree " << g.degree() << ", order " << g.order() << ", exponent "
              << g.exponent() << "\n";
    std::cout << "abelian " << preds.is_abelian << ", cyclic " << preds.is_cyclic
              << ", nilpotent " << preds.is_nilpotent << ", solvable " << preds.is_solvable
              << ", perfect " << preds.is_perfect << "\n";
    std::cout << "center order " << preds.center.order() << ", derived order "
              << preds.derived.order() << "\n";
    std::cout << "abelianization invariants:";
    for (long long d : abinv) std::cout << " " << d;
    std::cout << "\n";
    return 0;
}

int run_frobenius(const Group& g, bool json_out) {
    auto found = find_frobenius_structures(g);
    ordered_json out = ordered_json::array();
    for (auto& s : found) {
        auto checks = verify_structure_theorems(s);
        Subgroup recomputed = kernel_by_partition(g, s.complement);
        ordered_json j;
        j["kernel_order"] = s.kernel.order();
        j["complement_order"] = s.complement.order();
        ordered_json jc;
        for (const auto& [name, pass] : checks) jc[name] = pass;
        j["checks"] = jc;
        j["kernel_partition_agrees"] = recomputed.same_elements(s.kernel);
        out.push_back(j);
    }
    if (json_out) {
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    if (found.empty()) {
        std::cout << "not a Frobenius group\n";
        return 0;
    }
    for (const auto& j : out)
        std::cout << "kernel " << j["kernel_order"] << " x| complement "
                  << j["complement_order"] << " (partition agrees: "
                  << (j["kernel_partition_agrees"].get<bool>() ? "yes" : "no") << ")\n";
    return 0;
}

int run_classify(const Group& g, int cap, bool json_out) {
    GZReport rep = gz_report(g, cap);
    ordered_json j;
    j["z_group"] = rep.is_z_group;
    j["gz_group"] = rep.is_gz_group;
    j["solvable_type"] = rep.solvable_type;
    j["nonsolvable_type"] = rep.nonsolvable_type;
    if (rep.params) {
        ordered_json p;
        p["family"] = rep.params->family;
        p["m"] = rep.params->m;
        p["n"] = rep.params->n;
        p["r"] = rep.params->r;
        p["l"] = rep.params->l;
        p["k"] = rep.params->k;
        p["t"] = rep.params->t;
        j["presentation"] = p;
    }
    ordered_json c;
    c["prime_order_subgroup_order"] = rep.complement_criterion.prime_order_subgroup.order();
    c["has_decomposition"] = rep.complement_criterion.has_decomposition;
    c["n"] = rep.complement_criterion.n;
    c["h"] = rep.complement_criterion.h_tag;
    c["frobenius_complement"] = rep.complement_criterion.is_frobenius_complement;
    j["complement_criterion"] = c;
    if (json_out) {
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "Z-group: " << (rep.is_z_group ? "yes" : "no")
              << ", GZ-group: " << (rep.is_gz_group ? "yes" : "no") << "\n";
    std::cout << "solvable family: " << rep.solvable_type
              << ", non-solvable family: " << rep.nonsolvable_type << "\n";
    std::cout << "Frobenius complement criterion: "
              << (rep.complement_criterion.is_frobenius_complement ? "satisfied" : "fails")
              << " (cyclic part " << rep.complement_criterion.n << ", H = "
              << rep.complement_criterion.h_tag << ")\n";
    return 0;
}

int run_schur(const Group& g, int ccap, bool json_out) {
    CohomologyModule m = h2_qz(g, ccap);
    if (json_out) {
        ordered_json j;
        j["model"] = m.kind;
        j["modulus"] = m.n;
        j["invariants"] = invariants_json(m.invariants);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "multiplier invariants:";
    if (m.invariants.factors.empty()) std::cout << " trivial";
    for (long long d : m.invariants.factors) std::cout << " " << d;
    std::cout << " (order " << m.invariants.order() << ")\n";
    return 0;
}

ordered_json b0_json(const B0Result& r) {
    ordered_json j;
    j["invariants"] = invariants_json(r.invariants);
    j["method"] = r.method;
    j["details"] = r.details;
    j["witnesses"] = r.witnesses.size();
    return j;
}

int run_b0(const Group& g, const std::string& method, int ccap, bool json_out) {
    std::optional<B0Result> result;
    std::string note;
    bool is_pgroup = factorize(g.order()).size() <= 1;

    if (method == "criteria" || method == "auto") {
        if (is_pgroup) {
            if (auto crit = b0_zero_criteria(g)) {
                B0Result r;
                r.method = "criterion";
                r.details = *crit;
                result = r;
            } else if (method == "criteria") {
                note = "no vanishing criterion applies";
            }
        } else if (method == "criteria") {
            throw NotAPGroup("criteria method needs a p-group");
        }
    }
    if (!result && (method == "sylow" || method == "auto")) {
        auto found = find_frobenius_structures(g);
        if (!found.empty()) {
            if (auto r = b0_sylow_reduction(g, found[0], ccap))
                result = *r;
            else if (method == "sylow")
                note = "sylow reduction inconclusive";
        } else if (method == "sylow") {
            note = "not a Frobenius group";
        }
    }
    if (!result && (method == "full" || method == "auto")) result = b0(g, ccap);

    if (json_out) {
        ordered_json j;
        if (result)
            j = b0_json(*result);
        else
            j["inconclusive"] = note;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (!result) {
        std::cout << "inconclusive: " << note << "\n";
        return 0;
    }
    std::cout << "B0 invariants:";
    if (result->invariants.factors.empty()) std::cout << " trivial";
    for (long long d : result->invariants.factors) std::cout << " " << d;
    std::cout << "\nmethod: " << result->method << " (" << result->details << ")\n";
    return 0;
}

int run_certify(const Group& g, const std::string& field_spec, int cap, bool json_out) {
    FieldModel k = builtin_field(field_spec);
    Verdict v = certify(g, k, cap);
    if (json_out) {
        ordered_json j;
        j["field"] = k.name;
        j["outcome"] = v.outcome;
        ordered_json tr = ordered_json::array();
        for (const TraceStep& s : v.trace) {
            ordered_json js;
            js["rule"] = s.rule;
            js["statement"] = s.statement;
            ordered_json b;
            for (const auto& [key, val] : s.bindings) b[key] = val;
            js["bindings"] = b;
            tr.push_back(js);
        }
        j["trace"] = tr;
        j["corollaries"] = v.corollaries;
        if (v.outcome == "Unknown") {
            ordered_json at = ordered_json::array();
            for (const auto& [rule, why] : v.attempts)
                at.push_back(ordered_json{{"rule", rule}, {"failed", why}});
            j["attempts"] = at;
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "field: " << k.name << "\n" << explain(v);
    return 0;
}

int run_verify_paper(bool json_out) {
    VerificationReport rep;

    auto bi = verify_binary_icosahedral(11);
    for (const auto& line : bi.checks) rep.add("icosahedral." + line.name, line.pass, line.detail);

    GPlusModel gp = g_plus(25);
    const Group& gpg = gp.model.group;
    rep.add("double_cover.order_240", gpg.order() == 240);
    rep.add("double_cover.lambda_order_4", gpg.element_order(gp.lambda) == 4);
    int eps = gpg.mul(gp.lambda, gp.lambda);
    auto q = quotient(gpg, subgroup_generated(gpg, std::vector<int>{eps}));
    auto iso = is_isomorphic(q.group, symmetric_group(5));
    rep.add("double_cover.quotient_is_s5", iso.isomorphic);
    if (iso.isomorphic) {
        Group s5 = symmetric_group(5);
        std::vector<Perm> proj;
        for (int i = 0; i < gpg.order(); ++i)
            proj.push_back(s5.element(iso.witness[q.projection[i]]));
        rep.add("double_cover.type_hat", double_cover_type(gpg, eps, proj) == DoubleCoverTag::hat);
    }

    struct RepCase {
        const char* name;
        int l;
        long long order, exponent;
        bool psi;
    };
    const RepCase cases[] = {{"phi_l1", 1, 24, 12, false},
                             {"psi_l1", 1, 48, 24, true},
                             {"phi_l2", 2, 72, 36, false},
                             {"psi_l2", 2, 144, 72, true}};
    for (const RepCase& c : cases) {
        RepModel m = c.psi ? rep_psi(c.l, 73) : rep_phi(c.l, 73);
        rep.add(std::string("matrix_model.") + c.name + "_order", m.group.order() == c.order);
        rep.add(std::string("matrix_model.") + c.name + "_exponent",
                m.group.exponent() == c.exponent);
        rep.add(std::string("matrix_model.") + c.name + "_faithful", m.faithful);
    }

    // structural cross-checks on a small corpus
    {
        std::vector<Group> frob;
        frob.push_back(symmetric_group(3));
        frob.push_back(metacyclic(7, 3, 2));
        frob.push_back(dihedral_group(5));
        bool all_ok = true;
        for (const Group& g : frob) {
            auto found = find_frobenius_structures(g);
            if (found.empty()) {
                all_ok = false;
                continue;
            }
            for (auto& s : found) {
                auto checks = verify_structure_theorems(s);
                for (const auto& [name, pass] : checks) all_ok = all_ok && pass;
                all_ok =
                    all_ok && kernel_by_partition(g, s.complement).same_elements(s.kernel);
            }
        }
        rep.add("frobenius.structure_checks", all_ok);

        Group q8 = quaternion_generalized(8);
        Group v4 = abelian_group({2, 2});
        Group c6 = cyclic_group(6);
        rep.add("multiplier.q8_trivial", h2_qz(q8).invariants.trivial());
        rep.add("multiplier.klein_z2", h2_qz(v4).invariants.factors == Vec{2});
        rep.add("multiplier.c6_trivial", h2_qz(c6).invariants.trivial());
        Group d4 = dihedral_group(4);
        Group s4 = symmetric_group(4);
        rep.add("b0.q8_trivial", b0(q8).invariants.trivial());
        rep.add("b0.d4_trivial", b0(d4).invariants.trivial());
        rep.add("b0.s4_trivial", b0(s4).invariants.trivial());
    }

    if (json_out) {
        ordered_json out = ordered_json::array();
        for (const auto& line : rep.checks)
            out.push_back(ordered_json{{"check", line.name}, {"pass", line.pass}});
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& line : rep.checks)
            std::cout << (line.pass ? "PASS " : "FAIL ") << line.name << "\n";
        std::cout << (rep.all_pass() ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
    }
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite group analysis toolkit"};
    app.require_subcommand(1);
    bool json_out = false;
    int cap = Group::kDefaultCap;
    app.add_flag("--json", json_out, "emit JSON output");
    app.add_option("--cap", cap, "group order cap");

    std::string family;
    std::vector<long long> params;
    long long qmod = 0;
    auto* c_construct = app.add_subcommand("construct", "build a group and print its file");
    c_construct->add_option("family", family)->required();
    c_construct->add_option("params", params);
    c_construct->add_option("--q", qmod, "finite-field modulus for matrix constructions");

    std::string path_analyze, path_frob, path_classify, path_schur, path_b0, path_certify;
    auto* c_analyze = app.add_subcommand("analyze", "orders, exponent, predicates");
    c_analyze->add_option("groupfile", path_analyze)->required();
    auto* c_frob = app.add_subcommand("frobenius", "kernel/complement structures");
    c_frob->add_option("groupfile", path_frob)->required();
    auto* c_classify = app.add_subcommand("classify", "Z/GZ recognition and families");
    c_classify->add_option("groupfile", path_classify)->required();

    int ccap = 72;
    auto* c_schur = app.add_subcommand("schur", "multiplier invariants");
    c_schur->add_option("groupfile", path_schur)->required();
    c_schur->add_option("--ccap", ccap, "cohomology order cap");

    std::string method = "auto";
    auto* c_b0 = app.add_subcommand("b0", "unramified Brauer obstruction");
    c_b0->add_option("groupfile", path_b0)->required();
    c_b0->add_option("--method", method)
        ->check(CLI::IsMember({"auto", "full", "sylow", "criteria"}));

    std::string field_spec = "Q";
    auto* c_certify = app.add_subcommand("certify", "retract rationality verdict");
    c_certify->add_option("groupfile", path_certify)->required();
    c_certify->add_option("--field", field_spec, "Q | Qzeta:m | C | charp:p");

    auto* c_verify = app.add_subcommand("verify-paper", "run the built-in verification suite");
    (void)c_verify;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_construct->parsed()) {
            Group g = construct_group(family, params, qmod, cap);
            std::string name = family;
            if (!params.empty()) name += "_" + join_params(params);
            GroupFile f = groupfile_from_group(name, g);
            f.metadata["construction"] = name;
            f.metadata["order"] = std::to_string(g.order());
            std::cout << groupfile_to_json(f);
            return 0;
        }
        if (c_analyze->parsed()) return run_analyze(load_group(path_analyze, cap), json_out);
        if (c_frob->parsed()) return run_frobenius(load_group(path_frob, cap), json_out);
        if (c_classify->parsed()) return run_classify(load_group(path_classify, cap), cap, json_out);
        if (c_schur->parsed()) return run_schur(load_group(path_schur, cap), ccap, json_out);
        if (c_b0->parsed()) return run_b0(load_group(path_b0, cap), method, ccap, json_out);
        if (c_certify->parsed())
            return run_certify(load_group(path_certify, cap), field_spec, cap, json_out);
        if (c_verify->parsed()) return run_verify_paper(json_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

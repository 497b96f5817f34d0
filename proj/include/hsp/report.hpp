#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hsp/character_table.hpp"
#include "hsp/error.hpp"
#include "hsp/group.hpp"
#include "hsp/linalg.hpp"
#include "hsp/measurements.hpp"
#include "hsp/subgroup_lattice.hpp"
#include "hsp/verify.hpp"

namespace hsp {

using Json = nlohmann::ordered_json;

inline constexpr int kCsvSchemaVersion = 1;

// Everything derived from a group that the measurements need.
struct Instance {
    Group group;
    SubgroupLattice lattice;
    CharacterTable characters;

    static Instance analyze(Group g, const CharacterTableOptions& ct_opt = {},
                            std::size_t budget = kDefaultSubgroupBudget) {
        SubgroupLattice lat = enumerate_subgroups(g, budget);
        CharacterTable ct = character_table(g, ct_opt);
        return Instance{std::move(g), std::move(lat), std::move(ct)};
    }
};

inline Json operator_json(const Operator& op) {
    const auto n = op.dim();
    Json re = Json::array(), im = Json::array();
    for (Eigen::Index i = 0; i < n; ++i) {
        Json rr = Json::array(), ii = Json::array();
        for (Eigen::Index j = 0; j < n; ++j) {
            rr.push_back(op.entries(i, j).real());
            ii.push_back(op.entries(i, j).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ii));
    }
    return Json{{"n", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline Operator operator_from_json(const Json& j) {
    const auto n = j.at("n").get<Eigen::Index>();
    Operator op{Matrix::Zero(n, n), Tag::none};
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k)
            op.entries(i, k) = cdouble(j.at("re").at(i).at(k).get<double>(), j.at("im").at(i).at(k).get<double>());
    return op;
}

inline Json info_json(const Instance& in) {
    return Json{{"group", in.group.origin()},
                {"order", in.group.order()},
                {"abelian", in.group.is_abelian()},
                {"element_classes", in.characters.class_data.count()},
                {"subgroups", in.lattice.size()},
                {"subgroup_classes", in.lattice.classes.size()}};
}

inline Json subgroups_json(const SubgroupLattice& lat) {
    Json classes = Json::array();
    for (const auto& cls : lat.classes) {
        const auto& rep = lat.subgroups[cls.rep];
        classes.push_back(Json{{"rep", rep.elements}, {"size", cls.size()}, {"order", rep.order()}});
    }
    return Json{{"count", lat.size()}, {"classes", std::move(classes)}};
}

inline Json chartable_json(const CharacterTable& ct) {
    Json irreps = Json::array();
    for (std::size_t mu = 0; mu < ct.num_irreps(); ++mu) {
        Json chi = Json::array();
        for (Eigen::Index k = 0; k < ct.chi.cols(); ++k)
            chi.push_back(Json::array({ct.chi(Eigen::Index(mu), k).real(), ct.chi(Eigen::Index(mu), k).imag()}));
        irreps.push_back(Json{{"dim", ct.dims[mu]}, {"chi", std::move(chi)}});
    }
    return Json{{"classes", ct.class_data.sizes}, {"irreps", std::move(irreps)}};
}

inline Json plan_json(const MeasurementPlan& plan, const SubgroupLattice& lat, const CharacterTable& ct) {
    Json irreps = Json::array();
    for (std::size_t mu = 0; mu < plan.irreps.size(); ++mu) {
        const auto& ip = plan.irreps[mu];
        const auto& rep = lat.rep_of(ip.chosen_class);
        irreps.push_back(Json{{"irrep", mu},
                              {"dim", ct.dims[mu]},
                              {"chosen_class", ip.chosen_class},
                              {"rep", rep.elements},
                              {"order", rep.order()},
                              {"class_size", lat.classes[ip.chosen_class].size()},
                              {"tied_classes", ip.candidates},
                              {"s", ip.s},
                              {"e", ip.e},
                              {"validity_sum", plan.validity_sum(mu)},
                              {"skip", ip.skip}});
    }
    return Json{{"irreps", std::move(irreps)}};
}

inline Json povm_json(const Povm& povm, const SubgroupLattice& lat, bool dump_operators) {
    Json ops = Json::array();
    for (std::size_t h = 0; h < povm.size(); ++h) {
        Json entry{{"subgroup", h},
                   {"elements", lat.subgroups[h].elements},
                   {"trace", povm.operators[h].entries.trace().real()}};
        if (dump_operators) entry["operator"] = operator_json(povm.operators[h]);
        ops.push_back(std::move(entry));
    }
    return ops;
}

inline Json verification_json(const VerificationReport& r) {
    Json j{{"validity",
            {{"min_eigenvalues", r.validity.min_eigenvalues},
             {"min_eigenvalue", r.validity.min_eigenvalue()},
             {"hermitian_residual", r.validity.max_hermitian_residual()},
             {"completeness_residual", r.validity.completeness_residual}}},
           {"commutation_residual", r.optimality.commutation_residual},
           {"optimality_margins", r.optimality.margins},
           {"min_margin", r.optimality.min_margin()},
           {"success_probability", r.success_probability}};
    j["closed_form_success"] = r.closed_form_success ? Json(*r.closed_form_success) : Json(nullptr);
    j["verdict"] = Json{{"valid", r.valid},
                        {"certified_optimal", r.certified_optimal},
                        {"tolerances",
                         {{"psd", r.tolerances.psd},
                          {"completeness", r.tolerances.completeness},
                          {"commutation", r.tolerances.commutation},
                          {"margin", r.tolerances.margin}}}};
    return j;
}

// Reads {"weights": [{"class_index": i, "class_rep_order": m, "p": x}, ...]}.
// Each p is the probability of every individual subgroup in class i; an entry
// may instead name a single "subgroup_index". Subgroups not covered get
// probability 0 and the per-subgroup values must sum to 1. Conjugation
// invariance is not enforced here; build_plan checks it.
inline Prior load_class_weights(const SubgroupLattice& lat, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open prior file '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ParseError("prior file '" + path + "': " + e.what());
    }
    Prior p{std::vector<double>(lat.size(), 0.0)};
    try {
        for (const auto& w : j.at("weights")) {
            if (w.contains("subgroup_index")) {
                const auto h = w["subgroup_index"].get<std::size_t>();
                if (h >= lat.size()) throw ParseError("prior file: subgroup_index " + std::to_string(h) + " out of range");
                p.probs[h] = w.at("p").get<double>();
                continue;
            }
            const auto c = w.at("class_index").get<std::size_t>();
            if (c >= lat.classes.size()) throw ParseError("prior file: class_index " + std::to_string(c) + " out of range");
            if (w.contains("class_rep_order") && w["class_rep_order"].get<std::size_t>() != lat.rep_of(c).order())
                throw ParseError("prior file: class_rep_order does not match class " + std::to_string(c));
            const double v = w.at("p").get<double>();
            for (auto m : lat.classes[c].members) p.probs[m] = v;
        }
    } catch (const Json::exception& e) {
        throw ParseError("prior file '" + path + "': " + e.what());
    }
    double total = 0;
    for (double v : p.probs) total += v;
    if (std::abs(total - 1.0) > 1e-9) throw ParseError("prior file: probabilities sum to " + std::to_string(total));
    for (double& v : p.probs) v /= total;
    return p;
}

inline std::string csv_header() {
    return "schema_version,group,order,n_subgroups,method,valid,certified_optimal,p_succ,error";
}

struct CsvRow {
    std::string group;
    std::size_t order = 0;
    std::size_t n_subgroups = 0;
    std::string method;
    bool valid = false;
    bool certified_optimal = false;
    double p_succ = std::numeric_limits<double>::quiet_NaN();
    std::string error;
};

inline std::string csv_line(const CsvRow& r) {
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    };
    std::ostringstream os;
    os << std::setprecision(17);
    os << kCsvSchemaVersion << ',' << quote(r.group) << ',' << r.order << ',' << r.n_subgroups << ',' << r.method
       << ',' << (r.valid ? "true" : "false") << ',' << (r.certified_optimal ? "true" : "false") << ',';
    if (!std::isnan(r.p_succ)) os << r.p_succ;
    os << ',' << quote(r.error);
    return os.str();
}

// Human-readable rendering of a report; numbers rounded to 6 decimals.
inline void pretty_print(std::ostream& os, const Json& j, int indent = 0) {
    const std::string pad(std::size_t(indent) * 2, ' ');
    auto scalar = [](const Json& v) {
        std::ostringstream s;
        if (v.is_number_float()) s << std::fixed << std::setprecision(6) << v.get<double>();
        else if (v.is_string()) s << v.get<std::string>();
        else s << v.dump();
        return s.str();
    };
    auto flat = [&](const Json& arr) {
        for (const auto& v : arr)
            if (v.is_structured() && !(v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); })))
                return false;
        return true;
    };
    auto inline_array = [&](const Json& arr) {
        std::string s = "[";
        bool first = true;
        for (const auto& v : arr) {
            if (!first) s += ", ";
            first = false;
            if (v.is_array()) {
                s += "(";
                bool f2 = true;
                for (const auto& x : v) {
                    if (!f2) s += ", ";
                    f2 = false;
                    s += scalar(x);
                }
                s += ")";
            } else {
                s += scalar(v);
            }
        }
        return s + "]";
    };
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const Json& v = it.value();
            if (v.is_primitive()) os << pad << it.key() << ": " << scalar(v) << '\n';
            else if (v.is_array() && flat(v)) os << pad << it.key() << ": " << inline_array(v) << '\n';
            else {
                os << pad << it.key() << ":\n";
                pretty_print(os, v, indent + 1);
            }
        }
    } else if (j.is_array()) {
        if (flat(j)) {
            os << pad << inline_array(j) << '\n';
            return;
        }
        for (const auto& v : j) {
            os << pad << "-\n";
            pretty_print(os, v, indent + 1);
        }
    } else {
        os << pad << scalar(j) << '\n';
    }
}

}  // namespace hsp

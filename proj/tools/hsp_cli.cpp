// Command-line front end: build hidden subgroup state ensembles, synthesize
// measurements and certify them.

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hsp/hsp.hpp"

namespace {

using hsp::Json;

struct RunConfig {
    std::string group;
    std::string method;
    std::string prior = "uniform";
    std::string format = "json";
    std::string out;
    std::uint64_t seed = hsp::CharacterTableOptions{}.seed;
    std::size_t cap = hsp::kDefaultSizeCap;
    std::optional<double> tol;
    bool dump_operators = false;
};

std::size_t default_cap() {
    if (const char* env = std::getenv("HSP_SIZE_CAP")) {
        try {
            const auto v = std::stoul(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
        throw hsp::ParseError(std::string("HSP_SIZE_CAP must be a positive integer, got '") + env + "'");
    }
    return hsp::kDefaultSizeCap;
}

std::vector<hsp::Method> methods_for(const std::string& m, const std::string& fallback) {
    const std::string sel = m.empty() ? fallback : m;
    if (sel == "all") return {hsp::Method::pgm, hsp::Method::ip, hsp::Method::optimal};
    return {hsp::parse_method(sel)};
}

hsp::Tolerances tolerances(const RunConfig& cfg) {
    hsp::Tolerances t;
    if (cfg.tol) t.psd = t.completeness = t.commutation = t.margin = *cfg.tol;
    return t;
}

hsp::Instance analyze(const std::string& desc, const RunConfig& cfg) {
    hsp::CharacterTableOptions opt;
    opt.seed = cfg.seed;
    return hsp::Instance::analyze(hsp::parse_group(desc, cfg.cap), opt);
}

hsp::Prior make_prior(const hsp::Instance& in, const RunConfig& cfg) {
    if (cfg.prior == "uniform") return hsp::Prior::uniform(in.lattice);
    const std::string tag = "class-weights:@";
    if (cfg.prior.rfind(tag, 0) == 0) return hsp::load_class_weights(in.lattice, cfg.prior.substr(tag.size()));
    throw hsp::ParseError("unknown prior '" + cfg.prior + "' (expected uniform or class-weights:@file.json)");
}

struct Built {
    hsp::Povm povm;
    std::optional<hsp::MeasurementPlan> plan;
};

Built build(const hsp::Instance& in, hsp::Method m, const hsp::Prior& prior,
            const std::vector<hsp::WeightedState>& states) {
    switch (m) {
        case hsp::Method::pgm: return {hsp::pgm(states), std::nullopt};
        case hsp::Method::ip: return {hsp::ip_measurement(in.group, in.lattice), std::nullopt};
        case hsp::Method::optimal: {
            auto plan = hsp::build_plan(in.group, in.lattice, in.characters, prior);
            auto povm = hsp::optimal_measurement(in.group, in.lattice, in.characters, plan);
            return {std::move(povm), std::move(plan)};
        }
    }
    throw hsp::Error("unreachable");
}

hsp::VerificationReport verify_one(const hsp::Instance& in, const Built& b, const hsp::Prior& prior,
                                   const std::vector<hsp::WeightedState>& states, const hsp::Tolerances& tol) {
    auto r = hsp::verify(b.povm, states, tol);
    if (b.plan) r.closed_form_success = hsp::closed_form_success(*b.plan, in.lattice, in.characters, prior);
    return r;
}

// Output helpers --------------------------------------------------------

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw hsp::ParseError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void emit_json(const Json& j, const RunConfig& cfg) {
    Output out(cfg.out);
    if (cfg.format == "pretty") hsp::pretty_print(out.stream(), j);
    else out.stream() << j.dump(2) << '\n';
}

void emit_rows(const std::vector<hsp::CsvRow>& rows, const RunConfig& cfg) {
    Output out(cfg.out);
    auto& os = out.stream();
    if (cfg.format == "csv") {
        os << hsp::csv_header() << '\n';
        for (const auto& r : rows) os << hsp::csv_line(r) << '\n';
    } else if (cfg.format == "pretty") {
        os << std::left << std::setw(28) << "group" << std::setw(7) << "order" << std::setw(11) << "subgroups"
           << std::setw(9) << "method" << std::setw(7) << "valid" << std::setw(11) << "optimal" << "p_succ\n";
        for (const auto& r : rows) {
            os << std::left << std::setw(28) << r.group << std::setw(7) << r.order << std::setw(11) << r.n_subgroups
               << std::setw(9) << r.method << std::setw(7) << (r.valid ? "yes" : "no") << std::setw(11)
               << (r.certified_optimal ? "yes" : "no");
            if (r.error.empty()) os << std::fixed << std::setprecision(6) << r.p_succ;
            else os << "error: " << r.error;
            os << '\n';
        }
    } else {
        Json arr = Json::array();
        for (const auto& r : rows) {
            Json row{{"schema_version", hsp::kCsvSchemaVersion},
                     {"group", r.group},
                     {"order", r.order},
                     {"n_subgroups", r.n_subgroups},
                     {"method", r.method},
                     {"valid", r.valid},
                     {"certified_optimal", r.certified_optimal}};
            row["p_succ"] = r.error.empty() ? Json(r.p_succ) : Json(nullptr);
            if (!r.error.empty()) row["error"] = r.error;
            arr.push_back(std::move(row));
        }
        os << arr.dump(2) << '\n';
    }
}

// Commands ----------------------------------------------------------------

int cmd_info(const RunConfig& cfg) {
    const auto in = analyze(cfg.group, cfg);
    Json j = hsp::info_json(in);
    if (cfg.format == "csv") {
        Output out(cfg.out);
        out.stream() << "group,order,abelian,element_classes,subgroups,subgroup_classes\n"
                     << in.group.origin() << ',' << in.group.order() << ',' << (in.group.is_abelian() ? "true" : "false")
                     << ',' << in.characters.class_data.count() << ',' << in.lattice.size() << ','
                     << in.lattice.classes.size() << '\n';
        return 0;
    }
    emit_json(j, cfg);
    return 0;
}

int cmd_subgroups(const RunConfig& cfg) {
    const auto g = hsp::parse_group(cfg.group, cfg.cap);
    const auto lat = hsp::enumerate_subgroups(g);
    if (cfg.format == "csv") {
        Output out(cfg.out);
        out.stream() << "class,order,size,rep\n";
        for (std::size_t c = 0; c < lat.classes.size(); ++c) {
            out.stream() << c << ',' << lat.rep_of(c).order() << ',' << lat.classes[c].size() << ",\"";
            for (std::size_t i = 0; i < lat.rep_of(c).elements.size(); ++i)
                out.stream() << (i ? " " : "") << lat.rep_of(c).elements[i];
            out.stream() << "\"\n";
        }
        return 0;
    }
    emit_json(hsp::subgroups_json(lat), cfg);
    return 0;
}

int cmd_chartable(const RunConfig& cfg) {
    const auto g = hsp::parse_group(cfg.group, cfg.cap);
    hsp::CharacterTableOptions opt;
    opt.seed = cfg.seed;
    const auto ct = hsp::character_table(g, opt);
    if (cfg.format == "csv") {
        Output out(cfg.out);
        std::ostringstream os;
        os << std::setprecision(17);
        os << "irrep,dim";
        for (std::size_t k = 0; k < ct.class_data.count(); ++k) os << ",class" << k << "_re,class" << k << "_im";
        os << '\n';
        for (std::size_t mu = 0; mu < ct.num_irreps(); ++mu) {
            os << mu << ',' << ct.dims[mu];
            for (Eigen::Index k = 0; k < ct.chi.cols(); ++k)
                os << ',' << ct.chi(Eigen::Index(mu), k).real() << ',' << ct.chi(Eigen::Index(mu), k).imag();
            os << '\n';
        }
        out.stream() << os.str();
        return 0;
    }
    emit_json(hsp::chartable_json(ct), cfg);
    return 0;
}

int cmd_measure(const RunConfig& cfg) {
    const auto in = analyze(cfg.group, cfg);
    const auto prior = make_prior(in, cfg);
    prior.validate(in.lattice);
    const auto states = hsp::hsp_ensemble(in.group, in.lattice, prior);
    Json j{{"group", in.group.origin()}, {"order", in.group.order()}, {"n_subgroups", in.lattice.size()},
           {"prior", cfg.prior}};
    Json ms = Json::array();
    for (auto m : methods_for(cfg.method, "optimal")) {
        const Built b = build(in, m, prior, states);
        Json entry{{"method", hsp::to_string(m)}};
        if (b.plan) entry["plan"] = hsp::plan_json(*b.plan, in.lattice, in.characters);
        entry["operators"] = hsp::povm_json(b.povm, in.lattice, cfg.dump_operators);
        ms.push_back(std::move(entry));
    }
    j["measurements"] = std::move(ms);
    emit_json(j, cfg);
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    const auto in = analyze(cfg.group, cfg);
    const auto prior = make_prior(in, cfg);
    prior.validate(in.lattice);
    const auto states = hsp::hsp_ensemble(in.group, in.lattice, prior);
    const auto tol = tolerances(cfg);
    std::vector<hsp::CsvRow> rows;
    Json reports = Json::array();
    for (auto m : methods_for(cfg.method, "optimal")) {
        const Built b = build(in, m, prior, states);
        const auto r = verify_one(in, b, prior, states, tol);
        Json entry{{"method", hsp::to_string(m)}};
        entry.update(hsp::verification_json(r));
        if (cfg.dump_operators) entry["operators"] = hsp::povm_json(b.povm, in.lattice, true);
        reports.push_back(std::move(entry));
        rows.push_back({in.group.origin(), in.group.order(), in.lattice.size(), hsp::to_string(m), r.valid,
                        r.certified_optimal, r.success_probability, ""});
    }
    if (cfg.format == "csv") {
        emit_rows(rows, cfg);
        return 0;
    }
    emit_json(Json{{"group", in.group.origin()},
                   {"order", in.group.order()},
                   {"n_subgroups", in.lattice.size()},
                   {"prior", cfg.prior},
                   {"reports", std::move(reports)}},
              cfg);
    return 0;
}

struct GroupRows {
    std::vector<hsp::CsvRow> rows;
    int exit_code = 0;
};

GroupRows compare_group(const std::string& desc, const RunConfig& cfg, const std::vector<hsp::Method>& methods) {
    GroupRows out;
    std::optional<hsp::Instance> in;
    try {
        in = analyze(desc, cfg);
    } catch (const hsp::Error& e) {
        for (auto m : methods) {
            hsp::CsvRow row{desc, 0, 0, hsp::to_string(m)};
            row.error = e.what();
            out.rows.push_back(row);
        }
        out.exit_code = e.exit_code();
        return out;
    }
    std::optional<hsp::Prior> prior;
    std::vector<hsp::WeightedState> states;
    std::string prior_error;
    int prior_code = 0;
    try {
        prior = make_prior(*in, cfg);
        prior->validate(in->lattice);
        states = hsp::hsp_ensemble(in->group, in->lattice, *prior);
    } catch (const hsp::Error& e) {
        prior_error = e.what();
        prior_code = e.exit_code();
    }
    const auto tol = tolerances(cfg);
    for (auto m : methods) {
        hsp::CsvRow row{in->group.origin(), in->group.order(), in->lattice.size(), hsp::to_string(m)};
        if (!prior_error.empty()) {
            row.error = prior_error;
            out.exit_code = prior_code;
            out.rows.push_back(row);
            continue;
        }
        try {
            const Built b = build(*in, m, *prior, states);
            const auto r = verify_one(*in, b, *prior, states, tol);
            row.valid = r.valid;
            row.certified_optimal = r.certified_optimal;
            row.p_succ = r.success_probability;
        } catch (const hsp::Error& e) {
            row.error = e.what();
            if (out.exit_code == 0) out.exit_code = e.exit_code();
        }
        out.rows.push_back(row);
    }
    return out;
}

int run_groups(const std::vector<std::string>& descs, const RunConfig& cfg) {
    const auto methods = methods_for(cfg.method, "all");
    std::vector<std::future<GroupRows>> jobs;
    for (const auto& d : descs)
        jobs.push_back(std::async(std::launch::async, [&cfg, &methods, d] { return compare_group(d, cfg, methods); }));
    std::vector<hsp::CsvRow> rows;
    int code = 0;
    for (auto& f : jobs) {
        auto gr = f.get();
        if (code == 0) code = gr.exit_code;
        rows.insert(rows.end(), gr.rows.begin(), gr.rows.end());
    }
    emit_rows(rows, cfg);
    return code;
}

int cmd_compare(const RunConfig& cfg) { return run_groups({cfg.group}, cfg); }

int cmd_sweep(const RunConfig& cfg) { return run_groups(hsp::split_descriptor_list(cfg.group), cfg); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal single-copy measurements for the hidden subgroup problem"};
    app.require_subcommand(1);
    RunConfig cfg;
    try {
        cfg.cap = default_cap();
    } catch (const hsp::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    }

    app.add_option("--group,-g", cfg.group, "group descriptor, e.g. dihedral:4 (comma-separated list for sweep)");
    app.add_option("--method,-m", cfg.method, "pgm | ip | optimal | all")
        ->check(CLI::IsMember({"pgm", "ip", "optimal", "all"}));
    app.add_option("--prior", cfg.prior, "uniform | class-weights:@file.json");
    app.add_option("--format,-f", cfg.format, "json | csv | pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.add_option("--out,-o", cfg.out, "output file (default: stdout)");
    app.add_option("--seed", cfg.seed, "seed for the character-table solver")->check(CLI::PositiveNumber);
    app.add_option("--cap", cfg.cap, "maximum group order (default 200, or $HSP_SIZE_CAP)")->check(CLI::PositiveNumber);
    app.add_option("--tol", cfg.tol, "certification tolerance for validity and optimality checks")
        ->check(CLI::PositiveNumber);
    app.add_flag("--dump-operators", cfg.dump_operators, "include full operator matrices in JSON output");

    struct Command {
        const char* name;
        const char* help;
        int (*run)(const RunConfig&);
    };
    const Command commands[] = {
        {"info", "group order, abelian flag, class and subgroup counts", cmd_info},
        {"subgroups", "conjugacy classes of subgroups", cmd_subgroups},
        {"chartable", "character table", cmd_chartable},
        {"measure", "construct measurements and print their plan/operators", cmd_measure},
        {"verify", "validity and optimality certificates", cmd_verify},
        {"compare", "one CSV row per method for a group", cmd_compare},
        {"sweep", "compare over a comma-separated list of groups", cmd_sweep},
    };
    for (const auto& c : commands) app.add_subcommand(c.name, c.help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (cfg.group.empty()) throw hsp::ParseError("--group is required");
        for (const auto& c : commands)
            if (app.got_subcommand(c.name)) return c.run(cfg);
    } catch (const hsp::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

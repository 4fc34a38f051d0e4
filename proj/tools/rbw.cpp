// Command-line front end: ring info, scissors, xcomplex audit, certify,
// conditions, bw-table.

#include "rbw/serialize.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

using namespace rbw;
namespace fs = std::filesystem;

namespace {

enum Exit { ok = 0, certificate_failed = 1, budget = 2, invalid = 3 };

struct Config {
    std::string ring = "gf(2,3)";
    std::string rings;
    std::string format = "json";
    std::string out;
    std::string cache_dir;
    std::uint64_t budget_tuples = 1'000'000;
    std::size_t budget_basis = 5000;
    std::uint64_t budget_bar = 1'000'000;
    std::uint64_t budget_audit = 20'000;
    std::size_t budget_snf = 100'000;
    unsigned jobs = 0;
    std::uint64_t seed = 1;
    bool quiet = false;
    bool timing = false;

    ConditionLimits conditions() const { return {budget_audit, budget_bar, false}; }
};

struct Table {
    std::vector<std::string> head;
    std::vector<std::vector<std::string>> rows;
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string render(const Table& t, const std::string& format) {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        if (format == "csv") {
            for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
        } else {
            os << "|";
            for (const auto& c : cells) {
                os << ' ';
                for (char ch : c) os << (ch == '|' ? "\\|" : std::string(1, ch));
                os << " |";
            }
        }
        os << '\n';
    };
    line(t.head);
    if (format == "md") line(std::vector<std::string>(t.head.size(), "---"));
    for (const auto& r : t.rows) line(r);
    return os.str();
}

std::string joined(const std::vector<Integer>& v) {
    if (v.empty()) return "0";
    return AbPresentation::describe_invariants(v);
}

class Progress {
  public:
    explicit Progress(bool quiet) : quiet_(quiet) {}
    void operator()(const std::string& msg) const {
        if (!quiet_) std::cerr << msg << std::endl;
    }

  private:
    bool quiet_;
};

/// Scissors invariants keyed by schema version and the relator-matrix hashes.
class Cache {
  public:
    explicit Cache(std::string dir) : dir_(std::move(dir)) {
        if (!dir_.empty()) fs::create_directories(dir_);
    }

    template <class F>
    Json get(const RingPtr& ring, F compute) const {
        if (dir_.empty()) return compute();
        Scissors S(ring);
        auto P = S.p_presentation();
        auto RP = S.rp_presentation();
        const std::string key = sha256_hex("schema " + std::to_string(kSchemaVersion) + "\n" + ring->name() + "\n" +
                                           matrix_digest(P.relations(), P.generators()) + "\n" +
                                           matrix_digest(RP.relations(), RP.generators()));
        const fs::path file = fs::path(dir_) / (key + ".json");
        if (fs::exists(file)) {
            std::ifstream in(file);
            return Json::parse(in);
        }
        Json j = compute();
        std::ofstream(file) << j.dump() << '\n';
        return j;
    }

  private:
    std::string dir_;
};

std::vector<Integer> integers_of(const Json& j) {
    std::vector<Integer> out;
    for (const auto& x : j) out.emplace_back(x.get<std::string>());
    return out;
}

Elem parse_element(const Ring& R, const std::string& text) {
    for (Elem x = 0; x < R.size(); ++x)
        if (R.format(x) == text) return x;
    if (!text.empty() && text.find_first_not_of("0123456789") == std::string::npos) {
        const auto v = std::stoull(text);
        if (v < R.size()) return static_cast<Elem>(v);
    }
    throw InvalidInput("'" + text + "' is not an element of " + R.name());
}

std::vector<std::string> split_rings(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

struct Output {
    Json json;
    Table table;
    int code = Exit::ok;
};

Json header(const std::string& command) { return {{"schema_version", kSchemaVersion}, {"command", command}}; }

// --- commands ----------------------------------------------------------

Output ring_info(const Config& cfg) {
    auto R = Ring::build(cfg.ring);
    Output o;
    o.json = header("ring info");
    o.json["report"] = ring_json(*R);
    const Json& r = o.json["report"];
    o.table.head = {"ring", "size", "units", "w_set", "square_classes", "mu2", "unit_group"};
    o.table.rows.push_back({R->name(), std::to_string(R->size()), std::to_string(R->units().units.size()),
                            std::to_string(r["w_set"].size()), std::to_string(r["square_classes"].size()),
                            std::to_string(r["mu2"].size()), joined(integers_of(r["unit_group"]))});
    return o;
}

Output scissors(const Config& cfg, bool relations, const Progress& log) {
    auto R = Ring::build(cfg.ring);
    Scissors S(R);
    if (S.w_count() * S.class_count() > cfg.budget_snf)
        throw BudgetExceeded("scissors presentation", S.w_count() * S.class_count(), cfg.budget_snf);
    log("[scissors] " + R->name() + ": " + std::to_string(S.relator_pairs().size()) + " relator pairs");
    Output o;
    o.json = header("scissors");
    o.json["report"] = scissors_json(S.bloch_groups(), relations);
    const Json& r = o.json["report"];
    o.table.head = {"ring", "P", "B", "RP", "RP1", "RB"};
    o.table.rows.push_back({R->name(), joined(integers_of(r["P"]["invariants"])), joined(integers_of(r["B"])),
                            joined(integers_of(r["RP"]["invariants"])), joined(integers_of(r["RP1"])),
                            joined(integers_of(r["RB"]))});
    return o;
}

Output xcomplex_audit(const Config& cfg, std::size_t dmax, const Progress& log) {
    auto R = Ring::build(cfg.ring);
    log("[xcomplex] auditing " + R->name() + " through dimension " + std::to_string(dmax));
    auto rep = XComplex(R, XLimits{cfg.budget_tuples}).exactness_audit(dmax, cfg.timing);
    Output o;
    o.json = header("xcomplex audit");
    o.json["report"] = exactness_json(rep, cfg.timing);
    o.table.head = {"ring", "dim", "generators", "homology", "exact"};
    for (const auto& d : rep.dims)
        o.table.rows.push_back({rep.ring, std::to_string(d.dim), std::to_string(d.generators), joined(d.homology),
                                d.exact ? "yes" : "no"});
    if (rep.budget_note) {
        log("[xcomplex] " + *rep.budget_note);
        o.code = Exit::budget;
    } else if (!rep.all_exact()) {
        o.code = Exit::certificate_failed;
    }
    return o;
}

struct CertifyArgs {
    std::string identity;
    std::string a, b, c, z;
    bool all_pairs = false, all_triples = false, all = false, brief = false;
    std::size_t sample = 0;
};

Output certify(const Config& cfg, const CertifyArgs& args, const Progress& log) {
    auto R = Ring::build(cfg.ring);
    const auto units = R->units().units;
    const std::string& id = args.identity;
    const std::map<std::string, std::size_t> arity = {{"d1_10", 0}, {"d1_11", 0}, {"d1_21", 1}, {"d1_12", 2},
                                                      {"d1_22", 2}, {"theta", 1}, {"d2_22", 3}};
    if (!arity.count(id)) throw InvalidInput("unknown identity '" + id + "'");
    const std::size_t k = arity.at(id);

    std::vector<std::vector<Elem>> params;
    const std::vector<Elem> domain = id == "d1_21" ? R->units().mu2 : units;
    const bool everything = args.all || (k == 2 && args.all_pairs) || (k == 3 && args.all_triples) ||
                            (k == 1 && (args.all_pairs || args.all_triples));
    if (k == 0) {
        params.push_back({});
    } else if (everything) {
        std::vector<Elem> cur;
        std::function<void()> rec = [&] {
            if (cur.size() == k) return params.push_back(cur);
            for (Elem x : domain) {
                cur.push_back(x);
                rec();
                cur.pop_back();
            }
        };
        rec();
    } else if (args.sample > 0) {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<std::size_t> pick(0, domain.size() - 1);
        for (std::size_t i = 0; i < args.sample; ++i) {
            std::vector<Elem> p;
            for (std::size_t j = 0; j < k; ++j) p.push_back(domain[pick(rng)]);
            params.push_back(p);
        }
    } else {
        std::vector<Elem> p;
        if (k == 1) p.push_back(parse_element(*R, id == "theta" ? args.z : args.b));
        if (k >= 2) p = {parse_element(*R, args.a), parse_element(*R, args.b)};
        if (k == 3) p.push_back(parse_element(*R, args.c));
        params.push_back(p);
    }
    log("[certify " + id + "] " + R->name() + ": " + std::to_string(params.size()) + " certificate(s)");

    std::atomic<std::size_t> done{0};
    const std::size_t step = std::max<std::size_t>(1, params.size() / 10);
    auto certs = certify_batch(
        R, params.size(),
        [&](const Certifier& cf, std::size_t i) {
            const auto& p = params[i];
            Certificate c;
            if (id == "d1_10") c = cf.d1_10_check();
            else if (id == "d1_11") c = cf.d1_11_kernel_check();
            else if (id == "d1_21") c = cf.d1_21_check(p[0]);
            else if (id == "d1_12") c = cf.d1_12_check(p[0], p[1]);
            else if (id == "d1_22") c = cf.d1_22_certificate(p[0], p[1]);
            else if (id == "theta") c = cf.theta_certificate(p[0]);
            else c = cf.d2_22_certificate(p[0], p[1], p[2]);
            const std::size_t n = ++done;
            if (n % step == 0 || n == params.size()) log("[certify " + id + "] " + std::to_string(n) + "/" + std::to_string(params.size()));
            return c;
        },
        cfg.jobs, cfg.budget_basis);

    Certifier cf(R, cfg.budget_basis);
    Output o;
    o.json = header("certify");
    o.json["identity"] = id;
    o.json["ring"] = R->name();
    std::map<std::string, std::size_t> verdicts;
    std::size_t passed = 0;
    Json list = Json::array();
    o.table.head = {"identity", "ring", "params", "verdict", "passed"};
    for (const auto& c : certs) {
        ++verdicts[to_string(c.verdict)];
        passed += c.passed();
        Json j = certificate_json(cf, c);
        if (args.brief && c.passed()) j.erase("intermediate");
        std::string ps;
        for (const auto& [name, v] : c.params) ps += (ps.empty() ? "" : " ") + name + "=" + R->format(v);
        o.table.rows.push_back({c.identity, c.ring, ps, to_string(c.verdict), c.passed() ? "yes" : "no"});
        list.push_back(std::move(j));
    }
    o.json["summary"] = {{"total", certs.size()}, {"passed", passed}, {"verdicts", verdicts}};
    if (id == "d2_22" || id == "d1_11") o.json["scope_note"] = scope_note_d1_13();
    o.json["certificates"] = std::move(list);
    if (passed != certs.size()) o.code = Exit::certificate_failed;
    log("[certify " + id + "] " + std::to_string(passed) + "/" + std::to_string(certs.size()) + " passed");
    return o;
}

std::vector<std::string> ring_list(const Config& cfg) { return cfg.rings.empty() ? std::vector{cfg.ring} : split_rings(cfg.rings); }

Output conditions(const Config& cfg, const Progress& log) {
    Output o;
    o.json = header("conditions");
    o.json["reports"] = Json::array();
    o.table.head = {"ring", "condition_1", "condition_2", "condition_3", "detail"};
    for (const auto& spec : ring_list(cfg)) {
        log("[conditions] " + spec);
        auto r = condition_report(Ring::build(spec), cfg.conditions());
        o.json["reports"].push_back(conditions_json(r));
        auto cell = [](const ConditionFlag& f) { return std::string(to_string(f.status)) + " (" + f.basis + ")"; };
        o.table.rows.push_back({r.ring, cell(r.c1), cell(r.c2), cell(r.c3), r.c3.detail});
    }
    return o;
}

Output bw_table_cmd(const Config& cfg, const Progress& log) {
    Cache cache(cfg.cache_dir);
    Output o;
    o.json = header("bw-table");
    o.json["rows"] = Json::array();
    o.table.head = {"ring", "flags", "Tor_1(mu,mu)", "RB", "RB (lattice SNF)", "RB = B", "predicted |H_3|"};
    for (const auto& spec : ring_list(cfg)) {
        auto R = Ring::build(spec);
        log("[bw-table] " + R->name());
        Json inv = cache.get(R, [&] {
            log("[bw-table] " + R->name() + ": computing RB by two SNF paths");
            auto b = bloch_invariants(R);
            return Json{{"RB", integers_json(b.rb)}, {"RB_lattice_path", integers_json(b.rb_check)}, {"B", integers_json(b.b)}};
        });
        BlochInvariants known{integers_of(inv["RB"]), integers_of(inv["RB_lattice_path"]), integers_of(inv["B"])};
        auto r = bw_report(R, cfg.conditions(), known);
        o.json["rows"].push_back(bw_json(r));
        std::string flags;
        for (const auto* f : {&r.conditions.c1, &r.conditions.c2, &r.conditions.c3})
            flags += flags.empty() ? to_string(f->status) : std::string("/") + to_string(f->status);
        o.table.rows.push_back({r.ring, flags, joined(r.tor), joined(r.rb), joined(r.rb_check), r.rb_equals_b ? "yes" : "no",
                                r.predicted_h3 ? r.predicted_h3->get_str() + " (theorem-implied)" : "-"});
        if (!r.snf_paths_agree()) o.code = Exit::certificate_failed;
    }
    return o;
}

void add_common(CLI::App* sub, Config& cfg) {
    sub->add_option("--ring", cfg.ring, "ring spec, e.g. gf(2,3), z/9, gf(2,1)[t]/t^3");
    sub->add_option("--rings", cfg.rings, "comma-separated ring specs");
    sub->add_option("--format", cfg.format, "json | csv | md")->check(CLI::IsMember({"json", "csv", "md"}));
    sub->add_option("--out", cfg.out, "write the report here instead of standard output");
    sub->add_option("--cache-dir", cfg.cache_dir, "cache for scissors invariants");
    sub->add_option("--budget-tuples", cfg.budget_tuples, "largest X_n level built")->check(CLI::PositiveNumber);
    sub->add_option("--budget-basis", cfg.budget_basis, "boundary-search basis size")->check(CLI::PositiveNumber);
    sub->add_option("--budget-bar", cfg.budget_bar, "bar generators for the direct condition check")->check(CLI::PositiveNumber);
    sub->add_option("--budget-audit", cfg.budget_audit, "largest X_4 for the condition audit")->check(CLI::PositiveNumber);
    sub->add_option("--budget-snf", cfg.budget_snf, "largest scissors presentation")->check(CLI::PositiveNumber);
    sub->add_option("--jobs", cfg.jobs, "worker threads (0 = hardware)");
    sub->add_option("--seed", cfg.seed, "seed for sampled parameters");
    sub->add_flag("--quiet", cfg.quiet, "no progress on standard error");
    sub->add_flag("--timing", cfg.timing, "include wall-clock timings");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Refined Bloch-Wigner computations over finite local rings"};
    app.require_subcommand(1);
    Config cfg;

    auto* ring = app.add_subcommand("ring", "ring data");
    auto* ring_info_cmd = ring->add_subcommand("info", "units, W_A, square classes, mu_2");
    ring->require_subcommand(1);
    add_common(ring_info_cmd, cfg);

    bool relations = false;
    auto* sc = app.add_subcommand("scissors", "P, B, RP, RP_1, RB");
    add_common(sc, cfg);
    sc->add_flag("--relations", relations, "include relation matrices as sparse triplets");

    std::size_t dmax = 3;
    auto* xc = app.add_subcommand("xcomplex", "the complex X_*(A^2)");
    auto* audit = xc->add_subcommand("audit", "exactness through --dmax");
    xc->require_subcommand(1);
    add_common(audit, cfg);
    audit->add_option("--dmax", dmax, "top dimension");

    CertifyArgs ca;
    auto* cert = app.add_subcommand("certify", "spectral sequence identities");
    add_common(cert, cfg);
    cert->add_option("identity", ca.identity, "d1_10 | d1_11 | d1_12 | d1_21 | d1_22 | theta | d2_22")->required();
    cert->add_option("--a", ca.a);
    cert->add_option("--b", ca.b);
    cert->add_option("--c", ca.c);
    cert->add_option("--z", ca.z);
    cert->add_flag("--all-pairs", ca.all_pairs);
    cert->add_flag("--all-triples", ca.all_triples);
    cert->add_flag("--all", ca.all, "every parameter choice");
    cert->add_option("--sample", ca.sample, "random parameter choices drawn with --seed");
    cert->add_flag("--brief", ca.brief, "drop intermediate chains of passing certificates");

    auto* cond = app.add_subcommand("conditions", "flags (1), (2), (3)");
    add_common(cond, cfg);
    auto* bw = app.add_subcommand("bw-table", "Tor, RB and the implied |H_3|");
    add_common(bw, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? Exit::ok : Exit::invalid;
    }

    const Progress log(cfg.quiet);
    Output out;
    try {
        if (*ring_info_cmd) out = ring_info(cfg);
        else if (*sc) out = scissors(cfg, relations, log);
        else if (*audit) out = xcomplex_audit(cfg, dmax, log);
        else if (*cert) out = certify(cfg, ca, log);
        else if (*cond) out = conditions(cfg, log);
        else out = bw_table_cmd(cfg, log);
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return Exit::invalid;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return Exit::budget;
    }

    const std::string text = cfg.format == "json" ? out.json.dump(2) + "\n" : render(out.table, cfg.format);
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.out);
        if (!f) {
            std::cerr << "cannot write " << cfg.out << '\n';
            return Exit::invalid;
        }
        f << text;
    }
    return out.code;
}

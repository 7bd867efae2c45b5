#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "moorehom/groupoid_io.hpp"
#include "moorehom/mv.hpp"
#include "moorehom/sft.hpp"
#include "moorehom/uct.hpp"

namespace moore::cli {

namespace {

using nlohmann::json;

struct RunConfig {
    std::string input;
    size_t max_degree = 4;
    std::string coeff = "z";
    std::optional<size_t> budget_flag;
    std::string json_path;
    std::string dump_path;
    std::string out_path;
    std::string preset;
    uint64_t seed = 1;
    std::string u1, u2;
    bool primary = false;
    int64_t full_shift = 0;
    std::vector<int64_t> family;
    int64_t q = 0;
    int64_t qmax = 0;
    int64_t bound = 9;
};

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

size_t resolve_budget(const RunConfig& cfg) {
    if (cfg.budget_flag) return *cfg.budget_flag;
    if (const char* env = std::getenv("GH_BUDGET")) {
        try {
            size_t pos = 0;
            unsigned long long v = std::stoull(env, &pos);
            if (pos == std::string(env).size() && v >= 1) return static_cast<size_t>(v);
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("GH_BUDGET must be a positive integer, got '") + env + "'");
    }
    return kDefaultNerveBudget;
}

json integer_json(const Integer& x) {
    if (x.fits_int64()) return x.to_int64();
    return x.to_string();
}

json group_json(const FinAbGroup& g, bool primary) {
    json t = json::array();
    for (const auto& d : g.torsion()) t.push_back(integer_json(d));
    return json{{"text", g.to_string(primary)}, {"rank", g.rank()}, {"torsion", t}};
}

json matrix_json(const IntegerMatrix& M) {
    json rows = json::array();
    for (size_t i = 0; i < M.rows(); ++i) {
        json r = json::array();
        for (size_t j = 0; j < M.cols(); ++j) r.push_back(integer_json(M(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string matrix_text(const IntegerMatrix& M) {
    if (M.rows() == 0 || M.cols() == 0) return "[] (" + std::to_string(M.rows()) + "x" + std::to_string(M.cols()) + ")";
    std::string s = "[";
    for (size_t i = 0; i < M.rows(); ++i) {
        s += i ? "; " : "";
        for (size_t j = 0; j < M.cols(); ++j) s += (j ? " " : "") + M(i, j).to_string();
    }
    return s + "]";
}

std::vector<size_t> parse_positions(const std::string& text) {
    std::vector<size_t> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != tok.size() || tok[0] == '-') throw UsageError("bad unit index '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

FinAbGroup parse_coeff(const std::string& text) {
    try {
        return FinAbGroup::parse(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("bad coefficient group: ") + e.what());
    }
}

std::string braces(const std::vector<size_t>& v) {
    std::string s = "{";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

void write_json(const RunConfig& cfg, const json& doc) {
    if (cfg.json_path.empty()) return;
    std::ofstream f(cfg.json_path);
    if (!f) throw UsageError("cannot write '" + cfg.json_path + "'");
    f << doc.dump(2) << "\n";
}

void require_input(const RunConfig& cfg) {
    if (cfg.input.empty()) throw UsageError("missing -i/--input");
    if (cfg.max_degree < 1) throw UsageError("-N must be >= 1");
}

// Homology with f.g. coefficients: integral copies for the free part, a Moore
// complex over Z/t for each torsion summand.
std::vector<FinAbGroup> coefficient_homology(const FiniteGroupoid& G, const FinAbGroup& A, size_t N, size_t budget) {
    FreeChainComplex CZ = moore_complex(G, N, MooreOptions{Integer(0), budget, false});
    validate(CZ);
    std::vector<FreeChainComplex> tors;
    for (const auto& t : A.torsion()) {
        tors.push_back(moore_complex(G, N, MooreOptions{t, budget, false}));
        validate(tors.back());
    }
    std::vector<FinAbGroup> out;
    for (size_t n = 0; n < N; ++n) {
        std::vector<FinAbGroup> parts;
        if (A.rank() > 0) parts.assign(A.rank(), homology_int(CZ, n).group);
        for (const auto& Cq : tors) parts.push_back(homology(Cq, n).group);
        out.push_back(direct_sum(parts));
    }
    return out;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
    FiniteGroupoid G = make_preset(cfg.preset);
    if (cfg.out_path.empty()) {
        out << groupoid_to_json(G);
    } else {
        write_groupoid_file(G, cfg.out_path);
        out << "wrote " << cfg.out_path << ": " << G.arrow_count() << " arrows, " << G.unit_count() << " units\n";
    }
    return kExitOk;
}

int cmd_homology(const RunConfig& cfg, std::ostream& out) {
    require_input(cfg);
    const size_t budget = resolve_budget(cfg);
    FiniteGroupoid G = read_groupoid_file(cfg.input);
    FinAbGroup A = parse_coeff(cfg.coeff);
    const size_t N = cfg.max_degree;
    auto groups = coefficient_homology(G, A, N, budget);

    out << "groupoid: " << G.arrow_count() << " arrows, " << G.unit_count() << " units\n";
    out << "coefficients: " << A.to_string(cfg.primary) << "\n";
    out << "complex built to degree " << N << "; trusted degrees 0.." << N - 1 << "\n";
    json rows = json::array();
    for (size_t n = 0; n < N; ++n) {
        out << "H_" << n << " = " << groups[n].to_string(cfg.primary) << "\n";
        rows.push_back({{"degree", n}, {"group", group_json(groups[n], cfg.primary)}});
    }
    write_json(cfg, {{"command", "homology"},
                     {"arrows", G.arrow_count()},
                     {"units", G.unit_count()},
                     {"coefficients", group_json(A, cfg.primary)},
                     {"max_degree", N},
                     {"homology", rows},
                     {"ok", true}});

    if (!cfg.dump_path.empty()) {
        Integer modulus = (A.rank() == 0 && A.torsion().size() == 1) ? A.torsion()[0] : Integer(0);
        FreeChainComplex C = moore_complex(G, N, MooreOptions{modulus, budget, false});
        json bds = json::array();
        for (size_t n = 1; n <= N; ++n) {
            json flat = json::array();
            const IntegerMatrix d = C.boundary(n);
            for (const auto& x : d.data()) flat.push_back(integer_json(x));
            bds.push_back(std::move(flat));
        }
        std::ofstream f(cfg.dump_path);
        if (!f) throw UsageError("cannot write '" + cfg.dump_path + "'");
        f << json{{"modulus", integer_json(modulus)}, {"dims", C.dims}, {"boundaries", bds}}.dump() << "\n";
    }
    return kExitOk;
}

int cmd_uct(const RunConfig& cfg, std::ostream& out) {
    require_input(cfg);
    const size_t budget = resolve_budget(cfg);
    FiniteGroupoid G = read_groupoid_file(cfg.input);
    FinAbGroup A = parse_coeff(cfg.coeff);
    const size_t N = cfg.max_degree;
    const bool pr = cfg.primary;
    auto reports = uct_verify(G, A, N, budget);

    bool ok = true;
    out << "coefficients: " << A.to_string(pr) << "\n";
    json rows = json::array();
    for (const auto& r : reports) {
        bool row_ok = r.match && r.order_equation;
        ok = ok && row_ok;
        out << "n=" << r.degree << "  H_n=" << r.integral_n.to_string(pr) << "  H_n-1=" << r.integral_nminus1.to_string(pr)
            << "  tensor=" << r.tensor_part.to_string(pr) << "  tor=" << r.tor_part.to_string(pr)
            << "  assembled=" << r.assembled.to_string(pr) << "  direct=" << r.direct.to_string(pr)
            << "  match=" << (r.match ? "true" : "false") << (r.order_equation ? "" : "  ORDER MISMATCH") << "\n";
        rows.push_back({{"degree", r.degree},
                        {"integral_n", group_json(r.integral_n, pr)},
                        {"integral_nminus1", group_json(r.integral_nminus1, pr)},
                        {"coefficient", group_json(r.coefficient, pr)},
                        {"tensor_part", group_json(r.tensor_part, pr)},
                        {"tor_part", group_json(r.tor_part, pr)},
                        {"assembled", group_json(r.assembled, pr)},
                        {"direct", group_json(r.direct, pr)},
                        {"match", r.match},
                        {"order_equation", r.order_equation}});
    }

    json phi = json::array();
    for (const auto& t : A.torsion()) {
        bool p = phi_chain_check(G, t, N, budget);
        ok = ok && p;
        out << "chain-level reduction mod " << t << ": " << (p ? "equal" : "DIFFERENT") << "\n";
        phi.push_back({{"q", integer_json(t)}, {"equal", p}});
    }

    json kappa = json::array();
    if (A.rank() == 0 && A.torsion().size() == 1) {
        const Integer& q = A.torsion()[0];
        for (size_t n = 0; n < N; ++n) {
            try {
                KappaReport k = kappa_check(G, q, n, budget);
                out << "kappa n=" << n << ": image=" << k.image.to_string(pr) << " ok\n";
                kappa.push_back({{"degree", n}, {"image", group_json(k.image, pr)}, {"ok", true}});
            } catch (const AlgebraError& e) {
                ok = false;
                out << "kappa n=" << n << ": " << e.what() << "\n";
                kappa.push_back({{"degree", n}, {"error", e.what()}, {"ok", false}});
            }
        }
    }
    out << (ok ? "all degrees match\n" : "VERIFICATION FAILED\n");
    write_json(cfg, {{"command", "uct"}, {"reports", rows}, {"phi", phi}, {"kappa", kappa}, {"ok", ok}});
    return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_mv(const RunConfig& cfg, std::ostream& out) {
    require_input(cfg);
    const size_t budget = resolve_budget(cfg);
    FiniteGroupoid G = read_groupoid_file(cfg.input);
    FinAbGroup A = parse_coeff(cfg.coeff);
    if (A.rank() + A.torsion().size() != 1) throw UsageError("mv supports coefficients z or z/q");
    const Integer modulus = A.rank() ? Integer(0) : A.torsion()[0];
    const size_t N = cfg.max_degree;
    const bool pr = cfg.primary;

    MvDecomposition D = decompose(G, UnitSubset::from_positions(G, parse_positions(cfg.u1)),
                                  UnitSubset::from_positions(G, parse_positions(cfg.u2)));
    out << "cover: U1 = " << braces(D.U1.positions(G)) << "  U2 = " << braces(D.U2.positions(G))
        << "  U12 = " << braces(D.U12.positions(G)) << "\n";

    MvChainSes S = chain_ses(D, N, MvOptions{modulus, budget});
    json ses = json::array();
    out << "short exact sequence of Moore complexes:\n";
    for (size_t n = 0; n <= N; ++n) {
        const auto& c = S.checks[n];
        out << "  degree " << n << ": chain maps " << (c.alpha_chain && c.beta_chain ? "ok" : "FAIL")
            << ", alpha injective " << (c.alpha_injective ? "yes" : "NO") << ", beta surjective "
            << (c.beta_surjective ? "yes" : "NO") << ", ker beta = im alpha " << (c.exact_middle ? "yes" : "NO") << "\n";
        ses.push_back({{"degree", n},
                       {"alpha_chain", c.alpha_chain},
                       {"beta_chain", c.beta_chain},
                       {"alpha_injective", c.alpha_injective},
                       {"beta_surjective", c.beta_surjective},
                       {"exact_middle", c.exact_middle}});
    }

    LongExactSequence les = long_exact_sequence(D, N, LesOptions{modulus, budget, cfg.seed});
    out << "long exact sequence:\n";
    json nodes = json::array();
    for (size_t i = 0; i < les.nodes.size(); ++i) {
        const auto& nd = les.nodes[i];
        out << "  [" << i << "] " << nd.label << " = " << nd.group.to_string(pr);
        if (les.exact_at[i]) out << "   exact: " << (*les.exact_at[i] ? "yes" : "NO");
        out << "\n";
        json rec{{"label", nd.label}, {"group", group_json(nd.group, pr)}};
        if (i < les.maps.size()) {
            out << "        " << les.maps[i].label << " = " << matrix_text(les.maps[i].hom.matrix()) << "\n";
            rec["map"] = les.maps[i].label;
            rec["map_matrix"] = matrix_json(les.maps[i].hom.matrix());
        } else {
            rec["map_matrix"] = nullptr;
        }
        rec["exact"] = les.exact_at[i] ? json(*les.exact_at[i]) : json(nullptr);
        nodes.push_back(std::move(rec));
    }
    auto yn = [](bool b) { return b ? "yes" : "NO"; };
    out << "connecting map: " << les.connecting_checked << " cycles; boundaries " << yn(les.connecting_boundaries)
        << ", lift-independent " << yn(les.lift_independent) << ", cycle lifts " << yn(les.cycle_lifts) << "\n";
    const bool ok = les.ok();
    out << (ok ? "all nodes exact\n" : "VERIFICATION FAILED\n");
    write_json(cfg, {{"command", "mv"},
                     {"U1", D.U1.positions(G)},
                     {"U2", D.U2.positions(G)},
                     {"U12", D.U12.positions(G)},
                     {"ses", ses},
                     {"les", nodes},
                     {"connecting",
                      {{"checked", les.connecting_checked},
                       {"boundaries", les.connecting_boundaries},
                       {"lift_independent", les.lift_independent},
                       {"cycle_lifts", les.cycle_lifts}}},
                     {"seed", cfg.seed},
                     {"ok", ok}});
    return ok ? kExitOk : kExitVerificationFailed;
}

FamilySpec family_from(const RunConfig& cfg) {
    if (cfg.family.size() != 2) throw UsageError("--family takes two integers n m");
    FamilySpec s{cfg.family[0], cfg.family[1]};
    try {
        s.check();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return s;
}

int cmd_sft(const RunConfig& cfg, std::ostream& out) {
    const bool pr = cfg.primary;
    const size_t N = cfg.max_degree;
    bool ok = true;
    json doc{{"command", "sft"}};
    if (cfg.full_shift != 0) {
        if (cfg.full_shift < 2) throw UsageError("--full-shift needs n >= 2");
        auto groups = full_shift_homology(cfg.full_shift, N);
        SftHomology mh = sft_matrix_homology(full_shift_matrix(static_cast<size_t>(cfg.full_shift)));
        bool consistent = mh.h0 == groups[0] && mh.h1 == (groups.size() > 1 ? groups[1] : FinAbGroup());
        ok = ok && consistent;
        json rows = json::array();
        for (size_t k = 0; k < groups.size(); ++k) {
            out << "H_" << k << "(S_" << cfg.full_shift << ") = " << groups[k].to_string(pr) << "\n";
            rows.push_back(group_json(groups[k], pr));
        }
        out << "adjacency matrix route: H_0 = " << mh.h0.to_string(pr) << ", H_1 = " << mh.h1.to_string(pr)
            << (consistent ? " (consistent)\n" : " (INCONSISTENT)\n");
        doc["full_shift"] = {{"n", cfg.full_shift}, {"homology", rows}, {"matrix_h0", group_json(mh.h0, pr)},
                             {"matrix_h1", group_json(mh.h1, pr)}, {"consistent", consistent}};
    }
    if (!cfg.family.empty()) {
        FamilySpec s = family_from(cfg);
        auto integral = family_integral(s, N);
        json ig = json::array();
        for (size_t k = 0; k < integral.size(); ++k) {
            out << "H_" << k << "(H_{" << s.n << "," << s.m << "}) = " << integral[k].to_string(pr) << "\n";
            ig.push_back(group_json(integral[k], pr));
        }
        std::vector<int64_t> qs;
        if (cfg.q > 0) qs.push_back(cfg.q);
        for (int64_t q = 1; q <= cfg.qmax; ++q) qs.push_back(q);
        json rows = json::array();
        for (int64_t q : qs) {
            GcdRow row = family_mod(s, q);
            FinAbGroup Zq = FinAbGroup::cyclic(Integer(q));
            bool uct0 = uct_assemble(integral[0], FinAbGroup(), Zq).assembled == row.h0;
            bool uct1 = uct_assemble(integral.size() > 1 ? integral[1] : FinAbGroup(), integral[0], Zq).assembled == row.h1;
            ok = ok && uct0 && uct1;
            out << "q=" << q << "  H_0 = " << row.h0.to_string(pr) << "  H_1 = " << row.h1.to_string(pr)
                << ((uct0 && uct1) ? "" : "  UCT MISMATCH") << "\n";
            rows.push_back({{"q", q}, {"h0", group_json(row.h0, pr)}, {"h1", group_json(row.h1, pr)},
                            {"uct_agrees", uct0 && uct1}});
        }
        doc["family"] = {{"n", s.n}, {"m", s.m}, {"integral", ig}, {"table", rows}};
    }
    if (cfg.full_shift == 0 && cfg.family.empty()) throw UsageError("sft needs --full-shift n or --family n m");
    doc["ok"] = ok;
    write_json(cfg, doc);
    return ok ? kExitOk : kExitVerificationFailed;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    const bool pr = cfg.primary;
    FamilySpec s = family_from(cfg);
    const int64_t B = cfg.bound;
    const int64_t Q = cfg.qmax > 0 ? cfg.qmax : 2520;
    if (B < 2) throw UsageError("--bound must be >= 2");

    ClassifyResult r = classify(family_h1_oracle(s), B);
    json probes = json::array();
    for (const auto& p : r.probes) {
        out << "probe q=" << p.q << " (p=" << p.p << ", l=" << p.ell << "): H_1 = " << p.h1.to_string(pr)
            << "  valuations {" << p.valuations.first << "," << p.valuations.second << "}\n";
        probes.push_back({{"p", p.p}, {"l", p.ell}, {"q", p.q}, {"h1", group_json(p.h1, pr)},
                          {"valuations", {p.valuations.first, p.valuations.second}}});
    }
    const FamilySpec truth = s.canonical();
    bool sound = false;
    json cands = json::array();
    out << "candidates:";
    for (const auto& c : r.candidates) {
        out << " {" << c.n << "," << c.m << "}";
        cands.push_back({c.n, c.m});
        sound = sound || c == truth;
    }
    out << "\n" << "contains {" << truth.n << "," << truth.m << "}: " << (sound ? "yes" : "NO") << "\n";

    auto collisions = collision_search(B, Q);
    json coll = json::array();
    out << "collision search (B=" << B << ", qmax=" << Q << "): " << collisions.size() << " pair(s)\n";
    for (const auto& [a, b] : collisions) {
        out << "  {" << a.n << "," << a.m << "} vs {" << b.n << "," << b.m
            << "}: identical H_1(;Z/q) tables, flagged for manual review\n";
        coll.push_back({{"first", {a.n, a.m}}, {"second", {b.n, b.m}}, {"flagged", true}});
    }
    write_json(cfg, {{"command", "classify"},
                     {"family", {s.n, s.m}},
                     {"bound", B},
                     {"qmax", Q},
                     {"probes", probes},
                     {"candidates", cands},
                     {"sound", sound},
                     {"collisions", coll},
                     {"ok", sound}});
    return sound ? kExitOk : kExitVerificationFailed;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message, json extra = json::object()) {
    json e{{"kind", kind}, {"message", message}};
    for (auto& [k, v] : extra.items()) e[k] = v;
    err << json{{"error", e}}.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Moore homology of finite groupoids", "moorehom"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&cfg](CLI::App* sub) {
        sub->add_option("-i,--input", cfg.input, "groupoid JSON file");
        sub->add_option("-N,--max-degree", cfg.max_degree, "build the complex to degree N; report degrees 0..N-1");
        sub->add_option("--coeff", cfg.coeff, "coefficients: z, z/q, z^r+z/d1+...");
        sub->add_option("--budget", cfg.budget_flag, "nerve budget (total basis elements)");
        sub->add_option("--json", cfg.json_path, "write a structured report to this path");
        sub->add_flag("--primary", cfg.primary, "render torsion as prime powers");
    };

    auto* gen = app.add_subcommand("gen", "write a preset groupoid");
    gen->add_option("preset", cfg.preset, "units:k | cyclic:m | pair:k | action:m:perm | union:a,b")->required();
    gen->add_option("-o,--output", cfg.out_path, "output file (default stdout)");

    auto* hom = app.add_subcommand("homology", "homology table");
    common(hom);
    hom->add_option("--dump-complex", cfg.dump_path, "write the boundary matrices as JSON");

    auto* uct = app.add_subcommand("uct", "universal coefficient cross-check");
    common(uct);

    auto* mv = app.add_subcommand("mv", "Mayer-Vietoris sequence for a two-set cover");
    common(mv);
    mv->add_option("--u1", cfg.u1, "unit positions of U1, comma separated");
    mv->add_option("--u2", cfg.u2, "unit positions of U2, comma separated");
    mv->add_option("--seed", cfg.seed, "seed for the alternative-lift check");

    auto* sft = app.add_subcommand("sft", "full shifts and the H_{n,m} family");
    sft->add_option("--full-shift", cfg.full_shift, "full shift on n symbols");
    sft->add_option("--family", cfg.family, "family parameters n m")->expected(2);
    sft->add_option("--q", cfg.q, "single coefficient modulus");
    sft->add_option("--qmax", cfg.qmax, "table for q = 1..Q");
    sft->add_option("-N,--max-degree", cfg.max_degree, "number of degrees to list");
    sft->add_option("--json", cfg.json_path, "write a structured report to this path");
    sft->add_flag("--primary", cfg.primary, "render torsion as prime powers");

    auto* cls = app.add_subcommand("classify", "recover {n,m} from H_1 data");
    cls->add_option("--family", cfg.family, "family parameters n m")->expected(2)->required();
    cls->add_option("--bound", cfg.bound, "search bound B");
    cls->add_option("--qmax", cfg.qmax, "collision search range (default 2520)");
    cls->add_option("--json", cfg.json_path, "write a structured report to this path");
    cls->add_flag("--primary", cfg.primary, "render torsion as prime powers");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        report_error(err, "usage", e.what());
        return kExitError;
    }

    try {
        if (*gen) return cmd_gen(cfg, out);
        if (*hom) return cmd_homology(cfg, out);
        if (*uct) return cmd_uct(cfg, out);
        if (*mv) return cmd_mv(cfg, out);
        if (*sft) return cmd_sft(cfg, out);
        if (*cls) return cmd_classify(cfg, out);
    } catch (const UsageError& e) {
        report_error(err, "usage", e.what());
    } catch (const FormatError& e) {
        report_error(err, "format", e.what());
    } catch (const GroupoidError& e) {
        report_error(err, "groupoid", e.what(), {{"axiom", e.axiom}, {"witnesses", e.witnesses}});
    } catch (const BudgetError& e) {
        report_error(err, "budget", e.what(), {{"degree", e.degree}});
    } catch (const MvError& e) {
        json extra = json::object();
        if (e.witness) extra["witness"] = *e.witness;
        report_error(err, "mv", e.what(), extra);
    } catch (const ComplexError& e) {
        report_error(err, "complex", e.what());
    } catch (const AlgebraError& e) {
        report_error(err, "algebra", e.what());
    } catch (const std::exception& e) {
        report_error(err, "error", e.what());
    }
    return kExitError;
}

}  // namespace moore::cli

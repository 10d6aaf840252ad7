// Batch front end. Every report is a JSON object with the config it ran under,
// a "checks" map and an "ok" flag; the exit code is 0 iff ok.
#include <unistd.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qcl/dirac.hpp"
#include "qcl/errors.hpp"
#include "qcl/serialize.hpp"

using namespace qcl;
namespace fs = std::filesystem;

namespace {

constexpr int cache_format = 1;
constexpr double numeric_tol = 1e-10;

struct run_config {
    std::string command;
    std::string type = "A";
    int rank = 1;
    int s = 0;  // 1-based; 0 = not given
    std::string D = "auto";
    std::string weight_text;
    std::string weight2_text;
    int degree = 4;
    int copies = 1;
    bool exterior = false;
    int probe_bound = 2;
    std::string preset = "default";
    bool sweep = false;
    std::string format = "json";
    std::string cache_dir;
    std::vector<double> q0;
    std::string u0;

    rs_ptr rs;
    weight w, w2;

    json to_json() const {
        json j;
        j["type"] = type;
        j["rank"] = rank;
        j["s"] = s;
        j["D"] = D;
        j["weight"] = w;
        j["weight2"] = w2;
        j["degree"] = degree;
        j["copies"] = copies;
        j["exterior"] = exterior;
        j["probe_bound"] = probe_bound;
        j["preset"] = preset;
        j["sweep"] = sweep;
        j["format"] = format;
        j["cache_dir"] = cache_dir;
        j["q0"] = q0;
        j["u0"] = u0;
        return j;
    }
};

weight parse_weight(const std::string& text, int rank) {
    weight w;
    if (text.empty()) return weight(rank, 0);
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            size_t used = 0;
            const int v = std::stoi(part, &used);
            if (used != part.size() || v < 0) throw std::invalid_argument(part);
            w.push_back(v);
        } catch (const std::exception&) {
            fail("InvalidConfig", "weight entries must be nonnegative integers");
        }
    }
    if (static_cast<int>(w.size()) != rank) fail("InvalidConfig", "weight needs one entry per node");
    return w;
}

void validate(run_config& c, bool needs_s) {
    if (c.type.size() != 1 || std::string("ABCDEFG").find(c.type[0]) == std::string::npos)
        fail("InvalidConfig", "type must be one of A-G");
    c.rs = build_root_system(c.type[0], c.rank);
    if (needs_s && c.s == 0) fail("InvalidConfig", "--s is required");
    if (c.s < 0 || c.s > c.rank) fail("InvalidConfig", "--s must lie in 1..rank");
    if (c.D != "auto" && c.D != std::to_string(c.rs->root_degree()))
        fail("InvalidConfig", "D must be auto or " + std::to_string(c.rs->root_degree()) + " for " + c.rs->label());
    if (c.degree < 0 || c.degree > 12) fail("InvalidConfig", "degree must lie in 0..12");
    if (c.copies < 1 || c.copies > 4) fail("InvalidConfig", "copies must lie in 1..4");
    if (c.probe_bound != 1 && c.probe_bound != 2) fail("InvalidConfig", "probe bound is 1 or 2");
    if (c.preset != "default" && c.preset != "a" && c.preset != "b") fail("InvalidConfig", "preset is default, a or b");
    if (c.format != "json" && c.format != "csv" && c.format != "pretty") fail("InvalidConfig", "format is json, csv or pretty");
    static const std::vector<std::string> tabular{"roots", "cominuscule", "rep", "hilbert", "flatness", "collapse3", "dirac"};
    if (c.format == "csv" && std::find(tabular.begin(), tabular.end(), c.command) == tabular.end())
        fail("InvalidConfig", "csv output is not available for " + c.command);
    for (double q : c.q0)
        if (!(q > 0)) fail("InvalidConfig", "q0 values must be positive");
    c.w = parse_weight(c.weight_text, c.rank);
    c.w2 = c.weight2_text.empty() ? c.w : parse_weight(c.weight2_text, c.rank);
}

// ---------------------------------------------------------------------------
// cache

void cache_note(const std::string& what) { std::cerr << "cache: " << what << "\n"; }

std::optional<json> cache_read(const run_config& cfg, const std::string& name) {
    if (cfg.cache_dir.empty()) return std::nullopt;
    std::ifstream in(fs::path(cfg.cache_dir) / name);
    if (!in) return std::nullopt;
    try {
        return json::parse(in);
    } catch (const json::exception&) {
        cache_note("unreadable " + name);
        return std::nullopt;
    }
}

void cache_write(const run_config& cfg, const std::string& name, const json& doc) {
    if (cfg.cache_dir.empty()) return;
    fs::create_directories(cfg.cache_dir);
    const fs::path dst = fs::path(cfg.cache_dir) / name;
    const fs::path tmp = dst.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        out << doc.dump() << "\n";
        if (!out) fail("CacheWriteFailed", "cannot write " + tmp.string());
    }
    fs::rename(tmp, dst);
}

json cache_key(const run_config& cfg, const std::string& kind, const weight& w) {
    // modules do not depend on the node
    const int s = kind == "module" ? 0 : cfg.s;
    return {{"kind", kind}, {"type", cfg.type}, {"rank", cfg.rank}, {"s", s},
            {"D", cfg.rs->root_degree()}, {"weight", w}, {"format", cache_format}};
}

std::string cache_name(const json& key) {
    std::string n = key["kind"].get<std::string>() + "-" + key["type"].get<std::string>() +
                    std::to_string(key["rank"].get<int>());
    if (key["s"].get<int>() > 0) n += "-s" + std::to_string(key["s"].get<int>());
    n += "-D" + std::to_string(key["D"].get<int>());
    return n + "-" + content_hash(key) + ".json";
}

cominuscule_context load_context(const run_config& cfg) {
    const json key = cache_key(cfg, "context", {});
    const std::string name = cache_name(key);
    if (auto doc = cache_read(cfg, name)) {
        try {
            if (doc->at("key") == key) {
                auto c = context_from_json(doc->at("context"));
                if (context_audit(c).empty()) {
                    cache_note("hit " + name);
                    return c;
                }
            }
        } catch (const std::exception&) {
        }
        cache_note("rejected " + name);
    }
    auto c = build_context(cfg.rs, cfg.s - 1);
    cache_write(cfg, name, {{"key", key}, {"hash", content_hash(key)}, {"context", to_json(c)}});
    if (!cfg.cache_dir.empty()) cache_note("stored " + name);
    return c;
}

weight_module load_module(const run_config& cfg, const weight& w) {
    const json key = cache_key(cfg, "module", w);
    const std::string name = cache_name(key);
    if (auto doc = cache_read(cfg, name)) {
        try {
            if (doc->at("key") == key) {
                auto m = module_from_json(doc->at("module"), cfg.rs);
                if (relation_audit(m).empty() && m.dim() == static_cast<size_t>(cfg.rs->weyl_dimension(w))) {
                    cache_note("hit " + name);
                    return m;
                }
            }
        } catch (const std::exception&) {
        }
        cache_note("rejected " + name);
    }
    auto m = simple_module(cfg.rs, w);
    cache_write(cfg, name, {{"key", key}, {"hash", content_hash(key)}, {"module", to_json(m)}});
    if (!cfg.cache_dir.empty()) cache_note("stored " + name);
    return m;
}

// ---------------------------------------------------------------------------
// reports

struct report {
    json body = json::object();
    json checks = json::object();
    std::vector<std::vector<std::string>> csv;  // header first; empty = no table

    void check(const std::string& name, bool ok) { checks[name] = ok; }
    bool ok() const {
        for (const auto& [k, v] : checks.items())
            if (!v.get<bool>()) return false;
        return true;
    }
};

std::vector<std::string> var_names(size_t dim, int copies) {
    std::vector<std::string> out;
    const size_t per = dim / copies;
    const std::string letters = "xyzw";
    for (int c = 0; c < copies; ++c)
        for (size_t i = 0; i < per; ++i) out.push_back(letters[c] + std::to_string(i + 1));
    return out;
}

weight_module input_module(const run_config& cfg) {
    auto v = load_module(cfg, cfg.w);
    weight_module out = v;
    for (int k = 1; k < cfg.copies; ++k) out = direct_sum(out, v);
    return out;
}

json rules_json(const rewrite_table& t, const std::vector<std::string>& names, const scalar_context& ctx) {
    json a = json::array();
    for (const auto& [lhs, rhs] : t.rules) a.push_back(render_rule(t, lhs, names, ctx));
    return a;
}

std::string jstr(long v) { return std::to_string(v); }

report cmd_roots(const run_config& cfg) {
    report r;
    r.body["root_system"] = to_json(*cfg.rs);
    r.csv.push_back({"index", "height", "coeffs"});
    size_t i = 0;
    for (const auto& root : cfg.rs->positive_roots()) {
        std::string c;
        for (int x : root.coeffs) c += (c.empty() ? "" : " ") + std::to_string(x);
        r.csv.push_back({jstr(++i), jstr(root.height()), c});
    }
    bool top = cfg.rs->is_dominant(cfg.rs->highest_root().w);
    for (const auto& root : cfg.rs->positive_roots()) top = top && root.height() <= cfg.rs->highest_root().height();
    r.check("highest root is dominant and of maximal height", top);
    return r;
}

report cmd_cominuscule(const run_config& cfg) {
    report r;
    json list = json::array();
    r.csv.push_back({"node", "N"});
    for (int s : cominuscule_nodes(*cfg.rs)) {
        auto p = build_parabolic(cfg.rs, s, true);
        list.push_back(to_json(p));
        r.csv.push_back({jstr(s + 1), jstr(p.N())});
    }
    r.body["cominuscule"] = list;
    return r;
}

report cmd_rep(const run_config& cfg) {
    report r;
    auto m = load_module(cfg, cfg.w);
    r.body["module"] = to_json(m);
    r.body["decomposition"] = decompose(m).str();
    r.check("relations", relation_audit(m).empty());
    r.check("Weyl dimension", m.dim() == static_cast<size_t>(cfg.rs->weyl_dimension(cfg.w)));
    r.csv.push_back({"index", "weight"});
    for (size_t i = 0; i < m.dim(); ++i) r.csv.push_back({jstr(i + 1), weight_str(m.wts[i])});
    return r;
}

bool is_module_map(const weight_module& src, const weight_module& dst, const mat& f) {
    for (int i = 0; i < src.rank(); ++i) {
        if (!src.active[i]) continue;
        if (f * src.E[i] != dst.E[i] * f || f * src.F[i] != dst.F[i] * f) return false;
    }
    return true;
}

report cmd_braiding(const run_config& cfg) {
    report r;
    auto V = load_module(cfg, cfg.w);
    auto W = load_module(cfg, cfg.w2);
    const mat R = braiding(V, W), s = commutor(V, W);
    r.body["braiding"] = to_json(R);
    r.body["commutor"] = to_json(s);
    r.check("braiding is a module map", is_module_map(tensor(V, W), tensor(W, V), R));
    r.check("commutor is a module map", is_module_map(tensor(V, W), tensor(W, V), s));
    r.check("commutor is an involution", commutor(W, V) * s == mat::identity(V.dim() * W.dim()));
    if (cfg.w == cfg.w2) {
        const mat I = mat::identity(V.dim());
        r.check("Yang-Baxter", kron(R, I) * kron(I, R) * kron(R, I) == kron(I, R) * kron(R, I) * kron(I, R));
    }
    return r;
}

report cmd_qsym(const run_config& cfg) {
    report r;
    auto V = input_module(cfg);
    const auto names = var_names(V.dim(), cfg.copies);
    auto S = quantum_symmetric_algebra(V);
    auto L = quantum_exterior_algebra(V);
    r.body["symmetric_relations"] = rules_json(rewrite_to_ordered(S), names, V.ctx);
    r.body["exterior_relations"] = rules_json(rewrite_to_ordered(L), names, V.ctx);
    r.body["symmetric_hilbert"] = hilbert_series(S, std::min(cfg.degree, 3));
    r.body["exterior_hilbert"] = hilbert_series(L, std::min(cfg.degree, 3));
    auto D = quadratic_dual(S);
    r.check("dual of S_q(V) has the exterior relation count",
            D.relations.cols() == static_cast<size_t>(V.dim() * V.dim()) - S.relations.cols());
    return r;
}

// dim of degree n after specializing u = u0, a numeric rerun
long specialized_dimension(const quadratic_algebra& a, int n, const rat& u0) {
    const mat J = ideal_component(a, n);
    mat s(J.rows(), J.cols());
    for (size_t i = 0; i < J.rows(); ++i)
        for (size_t k = 0; k < J.cols(); ++k)
            if (!J(i, k).is_zero()) {
                if (J(i, k).den().eval(u0) == 0) fail("PoleAtParameter", "relation entry has a pole at u0");
                s(i, k) = scalar(J(i, k).eval_u(u0));
            }
    return static_cast<long>(J.rows()) - static_cast<long>(rank(s));
}

report cmd_hilbert(const run_config& cfg) {
    report r;
    auto V = input_module(cfg);
    auto A = cfg.exterior ? quantum_exterior_algebra(V) : quantum_symmetric_algebra(V);
    const auto kind = cfg.exterior ? qa_kind::exterior : qa_kind::symmetric;
    std::optional<rat> u0;
    if (!cfg.u0.empty()) {
        try {
            u0 = rat(cfg.u0);
            u0->canonicalize();
        } catch (const std::exception&) {
            fail("InvalidConfig", "u0 must be a rational number");
        }
    }
    auto h = hilbert_series(A, cfg.degree);
    json rows = json::array();
    r.csv.push_back({"degree", "quantum_dim", "classical_dim"});
    if (u0) r.csv[0].push_back("specialized_dim");
    for (int n = 0; n <= cfg.degree; ++n) {
        const long cl = classical_dimension(kind, static_cast<long>(V.dim()), n);
        json row = {{"degree", n}, {"quantum_dim", h[n]}, {"classical_dim", cl}};
        std::vector<std::string> line{jstr(n), jstr(h[n]), jstr(cl)};
        if (u0) {
            const long sd = specialized_dimension(A, n, *u0);
            row["specialized_dim"] = sd;
            line.push_back(jstr(sd));
        }
        rows.push_back(row);
        r.csv.push_back(line);
    }
    r.body["series"] = rows;
    r.body["algebra"] = cfg.exterior ? "exterior" : "symmetric";
    if (u0)
        r.body["specialization"] = "numeric rerun at u = " + u0->get_str() +
                                   "; may differ from the formal value at algebraic points";
    return r;
}

report cmd_flatness(const run_config& cfg) {
    report r;
    weight_module V;
    if (cfg.s > 0) {
        V = load_context(cfg).u_plus;
        r.body["module"] = "u+";
    } else {
        V = input_module(cfg);
        r.body["module"] = V.label;
    }
    r.csv.push_back({"algebra", "degree", "quantum_dim", "classical_dim"});
    for (bool ext : {false, true}) {
        auto A = ext ? quantum_exterior_algebra(V) : quantum_symmetric_algebra(V);
        const int d = ext ? std::max<int>(cfg.degree, static_cast<int>(V.dim()) + 1) : cfg.degree;
        auto f = is_flat(A, d);
        const std::string name = ext ? "exterior" : "symmetric";
        r.body[name] = {{"flat", f.flat}, {"witness_degree", f.witness_degree}, {"pbw_certified", f.pbw_certified},
                        {"quantum", f.quantum}, {"classical", f.classical}};
        for (size_t n = 0; n < f.quantum.size(); ++n)
            r.csv.push_back({name, jstr(static_cast<long>(n)), jstr(f.quantum[n]), jstr(f.classical[n])});
        if (cfg.s > 0 && ext) r.check("cominuscule exterior algebra is flat", f.flat);
    }
    return r;
}

report cmd_collapse3(const run_config& cfg) {
    report r;
    auto V = input_module(cfg);
    auto c = collapse_deficit_degree3(V);
    r.body["dim_sym_q"] = c.dim_sym_q;
    r.body["dim_ext_q"] = c.dim_ext_q;
    r.body["sym_q"] = c.sym_q.str();
    r.body["ext_q"] = c.ext_q.str();
    r.body["sym_classical"] = c.sym_cl.str();
    r.body["ext_classical"] = c.ext_cl.str();
    r.body["deficit"] = c.dim_sym_q - c.dim_ext_q;
    r.check("Grothendieck elements agree", c.equal);
    r.csv.push_back({"quantity", "value"});
    r.csv.push_back({"dim_sym_q", jstr(c.dim_sym_q)});
    r.csv.push_back({"dim_ext_q", jstr(c.dim_ext_q)});
    return r;
}

json clifford_section(const cominuscule_context& c, const clifford_data& d, const star_params& p, report& r) {
    json j;
    j["context"] = c.label();
    j["N"] = c.N();
    uq U(c.rs);
    json ex = json::array();
    for (const auto& e : c.e_xi) ex.push_back(U.render(e));
    j["root_vectors"] = ex;
    json schubert = json::array();
    for (const auto& rel : verify_schubert_quadratic(c)) {
        json t = {{"k", rel.k + 1}, {"l", rel.l + 1}, {"exponent", rel.exponent.get_str()}};
        json co = json::object();
        for (const auto& [ij, v] : rel.coeffs)
            co[std::to_string(ij.first + 1) + "," + std::to_string(ij.second + 1)] = v.str();
        t["coeffs"] = co;
        schubert.push_back(t);
    }
    j["schubert_relations"] = schubert;
    j["exterior_plus_relations"] = rules_json(d.ext_plus.rules, d.ext_plus.names(), c.ctx);
    j["exterior_minus_relations"] = rules_json(d.ext_minus.rules, d.ext_minus.names(), c.ctx);
    j["basis"] = d.ext_plus.names();
    j["pairing"] = to_json(d.pairing);
    json gp = json::array(), gm = json::array(), adj = json::array();
    const mat M = clifford_gram(c, d, p);
    for (size_t i = 1; i <= static_cast<size_t>(c.N()); ++i) {
        gp.push_back(to_json(d.gamma_plus[i]));
        gm.push_back(to_json(d.gamma_minus[i]));
        adj.push_back(to_json(adjoint_wrt(M, d.gamma_plus[i])));
    }
    j["gamma_plus"] = gp;
    j["gamma_minus"] = gm;
    j["gram"] = to_json(M);
    j["gamma_plus_adjoints"] = adj;
    json rels = json::array();
    for (const auto& e : all_commutation_relations(d)) rels.push_back(render_expansion(d, e, c.ctx));
    j["commutation_relations"] = rels;
    auto f = gamma_factorization(d);
    j["factorization_rank"] = f.rank;
    r.check("gamma factorization has rank 4^N", f.full);
    r.check("Clifford module-algebra audit", module_algebra_audit(c, d).empty());
    r.check("Frobenius left ideals", frobenius_ideal_audit(d.ext_plus).empty() && frobenius_ideal_audit(d.ext_minus).empty());
    r.check("associativity", associativity_audit(d.ext_plus, 40, 1).empty());
    r.check("star audit", star_audit(c, d, p).empty());
    for (size_t k = 0; k <= static_cast<size_t>(c.N()); ++k)
        if (d.ext_plus.in_degree(k).size() != static_cast<size_t>(classical_dimension(qa_kind::exterior, c.N(), k)))
            r.check("flat exterior algebra", false);
    r.check("flat exterior algebra", !r.checks.contains("flat exterior algebra"));
    return j;
}

// base scale q^b, degree-2 scale q^e; records the degree of each γ_+(x_i)* in the γ_−γ_+ basis
json star_sweep(const cominuscule_context& c, const clifford_data& d, report& r) {
    json out = json::array();
    bool in_image = true;
    const size_t N = c.N();
    for (long b = -2; b <= 2; ++b)
        for (long e = -2; e <= 2; ++e) {
            star_params p;
            p.base_scale = c.ctx.qpow(b);
            if (N >= 2) p.degree_scale[2] = c.ctx.qpow(e);
            const mat M = clifford_gram(c, d, p);
            json degs = json::array();
            bool single = true;
            for (size_t i = 0; i < N; ++i) {
                auto x = gamma_expansion(d, adjoint_wrt(M, d.gamma_plus[d.ext_plus.index.at({i})]));
                if (!x) {
                    in_image = false;
                    degs.push_back(nullptr);
                    single = false;
                    continue;
                }
                degs.push_back(expansion_degree(d, *x));
                single = single && x->size() == 1 && d.ext_minus.degree(x->begin()->first.first) == 1 &&
                         x->begin()->first.second == 0;
            }
            out.push_back({{"base_exp", b}, {"degree2_exp", e}, {"adjoint_degrees", degs}, {"proportional_to_y", single}});
            if (N < 2) break;
        }
    r.check("swept adjoints lie in the gamma image", in_image);
    return out;
}

report cmd_clifford(const run_config& cfg) {
    report r;
    auto c = load_context(cfg);
    auto d = build_clifford(c);
    r.body["clifford"] = clifford_section(c, d, star_preset(c, cfg.preset), r);
    if (cfg.sweep) r.body["star_sweep"] = star_sweep(c, d, r);
    return r;
}

report cmd_dirac(const run_config& cfg) {
    report r;
    auto c = load_context(cfg);
    auto d = build_clifford(c);
    auto W = load_module(cfg, cfg.w);
    r.check("eth^2 = 0 in the Koszul algebra", verify_eth_squared_zero(c, koszul_boundary(c)).zero);
    auto m = dirac_element(c, d, W, star_preset(c, cfg.preset));
    r.body["W"] = W.label;
    r.body["dim"] = m.dim;
    r.body["gram_mode"] = "exact";
    dirac_square_report sq;
    try {
        sq = verify_dirac_square(m);
    } catch (const error&) {
        sq.identity = false;
        sq.eth_sq_zero = (m.eth * m.eth).is_zero();
        sq.eth_star_sq_zero = (m.eth_star * m.eth_star).is_zero();
    }
    r.check("eth^2 = 0", sq.eth_sq_zero);
    r.check("(eth*)^2 = 0", sq.eth_star_sq_zero);
    r.check("D^2 = eth eth* + eth* eth", sq.identity);
    json spectra = json::array();
    r.csv.push_back({"q0", "index", "eigenvalue"});
    for (double q : cfg.q0) {
        auto s = dirac_spectrum(m, c.ctx, q);
        std::ostringstream qs;
        qs << q;
        spectra.push_back({{"q0", q}, {"eigenvalues", s.eigenvalues}, {"asymmetry", s.asymmetry},
                           {"positive_gram", s.positive_gram}});
        if (s.positive_gram) {
            bool nonneg = true;
            for (double v : s.eigenvalues) nonneg = nonneg && v > -numeric_tol;
            r.check("D self-adjoint at q0 = " + qs.str(), s.asymmetry < numeric_tol);
            r.check("D^2 nonnegative at q0 = " + qs.str(), nonneg);
        }
        for (size_t i = 0; i < s.eigenvalues.size(); ++i) {
            std::ostringstream os;
            os.precision(12);
            os << s.eigenvalues[i];
            r.csv.push_back({qs.str(), jstr(static_cast<long>(i + 1)), os.str()});
        }
    }
    r.body["spectra"] = spectra;
    return r;
}

mat from_rows(size_t n, const std::vector<scalar>& v) {
    mat m(n, n);
    for (size_t i = 0; i < n * n; ++i) m(i / n, i % n) = v[i];
    return m;
}

report cmd_paper_examples(const run_config& cfg) {
    report r;
    json sections = json::array();
    auto a1 = build_root_system('A', 1);
    auto V = simple_module(a1, {1});
    const auto& c1 = V.ctx;
    const scalar one(1), z(0), q = c1.q();

    {  // quantum plane
        auto t = rewrite_to_ordered(quantum_symmetric_algebra(V));
        json s = {{"name", "quantum plane"}, {"E", to_json(V.E[0])}, {"F", to_json(V.F[0])},
                  {"K", to_json(V.K(a1->simple_root(0)))}, {"relations", rules_json(t, {"x1", "x2"}, c1)}};
        r.check("quantum plane relation", t.rules.size() == 1 && t.rules.at({1, 0}).at({0, 1}) == q.inv());
        sections.push_back(s);
    }
    {  // braiding and commutor
        const mat R = braiding(V, V), s = commutor(V, V);
        const scalar h = c1.qpow(rat(1, 2)), hi = c1.qpow(rat(-1, 2)), h3 = c1.qpow(rat(-3, 2));
        const scalar den = q * q + one, a = (q * q - one) / den, b = (scalar(2) * q) / den;
        r.check("sl2 braiding matrix", R == from_rows(4, {h, z, z, z, z, h - h3, hi, z, z, hi, z, z, z, z, z, h}));
        r.check("sl2 commutor matrix", s == from_rows(4, {one, z, z, z, z, a, b, z, z, b, -a, z, z, z, z, one}));
        sections.push_back({{"name", "braiding and commutor"}, {"braiding", to_json(R)}, {"commutor", to_json(s)}});
    }
    {  // two copies of the quantum plane
        auto W = direct_sum(V, V);
        auto S = quantum_symmetric_algebra(W);
        const std::vector<std::string> names{"x1", "x2", "y1", "y2"};
        vec x(64);
        x[3] = one;
        x[4 + 2] = -q;
        const long h3 = graded_dimension(S, 3);
        r.check("x1^2 y2 = q x1 x2 y1 holds", in_ideal(S, 3, x));
        r.check("h3 below the classical 20", h3 < 20);
        sections.push_back({{"name", "non-flat V+V"}, {"relations", rules_json(rewrite_to_ordered(S), names, c1)},
                            {"h3", h3}, {"classical_h3", 20}});
    }
    {  // sl3 Schubert identities
        auto a2 = build_root_system('A', 2);
        uq U(a2);
        auto c = build_context(a2, 0);
        auto probes = probe_family(a2, cfg.probe_bound == 2);
        const auto& x1 = c.e_xi[0];
        const auto& x2 = c.e_xi[1];
        r.check("T2(E1) = q^-1 E1 E2 - E2 E1", U.render(U.braid(1, element::e(0))) == "q^-1*E1*E2 - E2*E1");
        r.check("E_xi2 E_xi1 = q^-1 E_xi1 E_xi2", probe_equal(probes, x2 * x1, (x1 * x2).scaled(c.ctx.q().inv())));
        r.check("E2 acts on E_xi1 by zero", probe_equal(probes, U.adjoint(element::e(1), x1), element()));
        r.check("F2 sends E_xi1 to -E_xi2", probe_equal(probes, U.adjoint(element::f(1), x1), -x2));
        sections.push_back({{"name", "sl3 Schubert identities"}, {"T2(E1)", U.render(U.braid(1, element::e(0)))},
                            {"probes", probes.size()}});
    }
    {  // the Clifford section
        auto c = load_context(cfg);
        auto d = build_clifford(c);
        json s = clifford_section(c, d, star_preset(c, cfg.preset), r);
        if (c.rs->type() == 'A' && c.rs->rank() == 2 && c.s() == 0) {
            const scalar qq = c.ctx.q(), sum = qq + qq.inv(), h = (one + qq * qq).inv();
            r.check("top pairing", d.pairing(3, 3) == -sum.inv());
            r.check("creation operators",
                    d.gamma_plus[1] == from_rows(4, {z, z, z, z, one, z, z, z, z, z, z, z, z, z, one, z}) &&
                        d.gamma_plus[2] == from_rows(4, {z, z, z, z, z, z, z, z, one, z, z, z, z, -qq, z, z}));
            r.check("annihilation operators",
                    d.gamma_minus[1] == from_rows(4, {z, one, z, z, z, z, z, z, z, z, z, h, z, z, z, z}) &&
                        d.gamma_minus[2] == from_rows(4, {z, z, one, z, z, z, z, -sum.inv(), z, z, z, z, z, z, z, z}));
            const auto& g = d.gamma_plus;
            const auto& y = d.gamma_minus;
            r.check("commutation relations",
                    g[1] * y[1] + g[2] * y[2] == mat::identity(4) + (y[3] * g[3]).scaled(sum) &&
                        (g[1] * y[1]).scaled(qq) - (g[2] * y[2]).scaled(qq.inv()) ==
                            (y[2] * g[2] - y[1] * g[1]).scaled(sum) &&
                        g[1] * y[2] == (y[2] * g[1]).scaled(-sum) && g[2] * y[1] == (y[1] * g[2]).scaled(-sum));
            auto Ma = clifford_gram(c, d, star_preset(c, "a"));
            auto Mb = clifford_gram(c, d, star_preset(c, "b"));
            r.check("preset a adjoints", adjoint_wrt(Ma, g[1]) == y[1] && adjoint_wrt(Ma, g[2]) == y[2].scaled(qq));
            r.check("preset b adjoints",
                    adjoint_wrt(Mb, g[1]) == y[1].scaled(qq.inv()) && adjoint_wrt(Mb, g[2]) == y[2]);
            auto m = dirac_element(c, d, simple_module(c.rs, {1, 0}), star_preset(c, "a"));
            r.check("Dirac square on W = V(w1)", verify_dirac_square(m).ok());
            s["dirac_dim"] = m.dim;
        }
        s["name"] = "Clifford section";
        sections.push_back(s);
    }
    r.body["sections"] = sections;
    return r;
}

// ---------------------------------------------------------------------------
// output

void pretty(std::ostream& os, const json& j, int indent) {
    const std::string pad(indent, ' ');
    auto is_matrix = [](const json& a) {
        return a.is_array() && !a.empty() && a[0].is_array() && !a[0].empty() && !a[0][0].is_array() &&
               !a[0][0].is_object();
    };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_object() || (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array()))) {
                os << pad << k << ":\n";
                pretty(os, v, indent + 2);
            } else {
                os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        }
    } else if (is_matrix(j)) {
        for (const auto& row : j) {
            os << pad << "[";
            for (size_t i = 0; i < row.size(); ++i)
                os << (i ? ", " : "") << (row[i].is_string() ? row[i].get<std::string>() : row[i].dump());
            os << "]\n";
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object() || v.is_array()) {
                os << pad << "-\n";
                pretty(os, v, indent + 2);
            } else {
                os << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        }
    } else {
        os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

void emit(const run_config& cfg, const report& r) {
    json out = r.body;
    out["command"] = cfg.command;
    out["config"] = cfg.to_json();
    out["checks"] = r.checks;
    out["ok"] = r.ok();
    json failed = json::array();
    for (const auto& [k, v] : r.checks.items())
        if (!v.get<bool>()) failed.push_back(k);
    out["failed"] = failed;
    if (cfg.format == "json") {
        std::cout << out.dump(2) << "\n";
    } else if (cfg.format == "pretty") {
        pretty(std::cout, out, 0);
    } else {
        if (r.csv.empty()) fail("InvalidConfig", "csv output is not available for " + cfg.command);
        for (const auto& row : r.csv) {
            for (size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << row[i];
            std::cout << "\n";
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    run_config cfg;
    if (const char* env = std::getenv("QCL_CACHE_DIR")) cfg.cache_dir = env;

    CLI::App app{"exact quantum groups, quantum Clifford algebras and Dolbeault-Dirac checks"};
    app.require_subcommand(1);
    auto common = [&](CLI::App* sub, bool with_s) {
        sub->add_option("--type", cfg.type, "root system type A-G");
        sub->add_option("--rank", cfg.rank, "rank");
        if (with_s) sub->add_option("--s", cfg.s, "cominuscule node, 1-based");
        sub->add_option("--D", cfg.D, "scalar root degree: auto or the exact value");
        sub->add_option("--format", cfg.format, "json, csv or pretty");
        sub->add_option("--cache-dir", cfg.cache_dir, "cache directory (env QCL_CACHE_DIR)");
        sub->add_option("--probe-bound", cfg.probe_bound, "1 = fundamental modules, 2 = also pairwise tensors");
    };
    auto with_weight = [&](CLI::App* sub) {
        sub->add_option("--weight", cfg.weight_text, "highest weight, comma separated");
        sub->add_option("--copies", cfg.copies, "direct sum of this many copies");
    };

    auto* roots = app.add_subcommand("roots", "root system data");
    common(roots, false);
    auto* comin = app.add_subcommand("cominuscule", "cominuscule nodes and radical roots");
    common(comin, false);
    auto* rep = app.add_subcommand("rep", "simple module matrices");
    common(rep, false);
    rep->add_option("--weight", cfg.weight_text, "highest weight, comma separated");
    auto* br = app.add_subcommand("braiding", "braiding and commutor matrices");
    common(br, false);
    br->add_option("--weight", cfg.weight_text, "first highest weight");
    br->add_option("--weight2", cfg.weight2_text, "second highest weight (default: the first)");
    auto* qs = app.add_subcommand("qsym", "relations of the quantum symmetric and exterior algebras");
    common(qs, false);
    with_weight(qs);
    auto* hi = app.add_subcommand("hilbert", "graded dimensions");
    common(hi, false);
    with_weight(hi);
    hi->add_option("--degree", cfg.degree, "top degree");
    hi->add_flag("--exterior", cfg.exterior, "exterior instead of symmetric");
    hi->add_option("--u0", cfg.u0, "also rerun at a rational value of u");
    auto* fl = app.add_subcommand("flatness", "flatness of S_q and Lambda_q");
    common(fl, true);
    with_weight(fl);
    fl->add_option("--degree", cfg.degree, "top degree");
    auto* co = app.add_subcommand("collapse3", "degree-3 collapse");
    common(co, false);
    with_weight(co);
    auto* cl = app.add_subcommand("clifford", "quantum Clifford algebra of a cominuscule pair");
    common(cl, true);
    cl->add_option("--preset", cfg.preset, "star preset: default, a or b");
    cl->add_flag("--sweep", cfg.sweep, "sweep base and degree-2 star scales over q^-2..q^2");
    auto* di = app.add_subcommand("dirac", "Koszul boundary and Dolbeault-Dirac element");
    common(di, true);
    di->add_option("--weight", cfg.weight_text, "highest weight of W");
    di->add_option("--preset", cfg.preset, "star preset");
    di->add_option("--q0", cfg.q0, "numeric values of q for spectra");
    auto* rp = app.add_subcommand("report", "regenerate the worked examples");
    common(rp, true);
    rp->add_option("--preset", cfg.preset, "star preset");
    std::string which;
    rp->add_option("which", which, "paper-examples")->required()->check(CLI::IsMember({"paper-examples"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.command == "report") {
        cfg.command = "report " + which;
        if (rp->count("--type") == 0) cfg.type = "A";
        if (rp->count("--rank") == 0) cfg.rank = 2;
        if (rp->count("--s") == 0) cfg.s = 1;
    }

    try {
        const bool needs_s = cfg.command == "clifford" || cfg.command == "dirac" || cfg.command.rfind("report", 0) == 0;
        validate(cfg, needs_s);
        report r;
        if (cfg.command == "roots") r = cmd_roots(cfg);
        else if (cfg.command == "cominuscule") r = cmd_cominuscule(cfg);
        else if (cfg.command == "rep") r = cmd_rep(cfg);
        else if (cfg.command == "braiding") r = cmd_braiding(cfg);
        else if (cfg.command == "qsym") r = cmd_qsym(cfg);
        else if (cfg.command == "hilbert") r = cmd_hilbert(cfg);
        else if (cfg.command == "flatness") r = cmd_flatness(cfg);
        else if (cfg.command == "collapse3") r = cmd_collapse3(cfg);
        else if (cfg.command == "clifford") r = cmd_clifford(cfg);
        else if (cfg.command == "dirac") r = cmd_dirac(cfg);
        else r = cmd_paper_examples(cfg);
        emit(cfg, r);
        return r.ok() ? 0 : 1;
    } catch (const std::exception& e) {
        const auto* qe = dynamic_cast<const error*>(&e);
        json rec = {{"ok", false},
                    {"command", cfg.command},
                    {"error", {{"kind", qe ? qe->kind() : std::string("InternalError")}, {"message", e.what()}}}};
        try {
            rec["config"] = cfg.to_json();
        } catch (const std::exception&) {
        }
        std::cout << rec.dump(2) << "\n";
        return 2;
    }
}

#include "bsc/runner.hpp"

#include "bsc/dense_space.hpp"
#include "bsc/e_oracle.hpp"
#include "bsc/heavy.hpp"
#include "bsc/norton.hpp"
#include "bsc/s_model.hpp"

#include <chrono>
#include <set>
#include <sstream>

namespace bsc {

namespace {

const std::vector<std::string> kGroups{"params", "bfs", "local", "e", "s", "norton", "heavy"};

json rat(const Rational& r) { return to_string(r); }

json mat_json(const RatMatrix6& m)
{
    json a = json::array();
    for (int i = 0; i < 6; ++i) {
        json r = json::array();
        for (int j = 0; j < 6; ++j) r.push_back(rat(m(i, j)));
        a.push_back(r);
    }
    return a;
}

json vec_json(const RatVector6& v)
{
    json a = json::array();
    for (int i = 0; i < 6; ++i) a.push_back(rat(v(i)));
    return a;
}

std::string pair_mode_name(PairMode m)
{
    switch (m) {
    case PairMode::canonical: return "canonical";
    case PairMode::random: return "random";
    case PairMode::explicit_pair: return "explicit";
    }
    return "unknown";
}

const CatalogEntry* find_entry(const std::string& name)
{
    for (const auto& e : check_catalog())
        if (e.name == name) return &e;
    return nullptr;
}

// Times one producer and stamps the elapsed time on everything it returned.
template <typename F>
std::vector<CheckResult> timed(F&& f)
{
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckResult> r = f();
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    for (auto& c : r) c.elapsed_ms = ms;
    return r;
}

std::vector<CheckResult> skip_group(const std::string& group, const std::string& reason)
{
    std::vector<CheckResult> out;
    for (const auto& e : check_catalog())
        if (e.group == group) out.push_back(make_skipped(e.name, e.anchor, reason));
    return out;
}

}  // namespace

std::string list_checks()
{
    std::ostringstream os;
    for (const auto& e : check_catalog())
        os << e.name << (e.exploratory ? " (exploratory)" : "") << "  [" << e.group << "]  " << e.anchor << '\n';
    return os.str();
}

void validate_config(const RunConfig& c)
{
    const GraphParams p{c.q, c.D, c.N};
    try {
        p.validate();
        p.validate_distance(c.k);
    } catch (const InvalidParameters& e) {
        throw ConfigError(e.what());
    }
    if (c.n_max_words < 1 || c.n_max_words > 24) throw ConfigError("n-max-words must be in [1, 24]");
    if (c.threads < 1) throw ConfigError("threads must be positive");
    for (const auto& name : c.checks) {
        if (name == "all") continue;
        if (std::find(kGroups.begin(), kGroups.end(), name) != kGroups.end()) continue;
        if (!find_entry(name)) throw ConfigError("unknown check " + name);
    }
    if (c.pair_mode == PairMode::explicit_pair) {
        try {
            const MatVertex x = MatVertex::parse(c.D, c.N - c.D, c.x_text, c.q);
            const MatVertex y = MatVertex::parse(c.D, c.N - c.D, c.y_text, c.q);
            if (distance(p, x, y) != c.k) throw ConfigError("explicit pair is not at distance k");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(std::string("cannot parse explicit pair: ") + e.what());
        }
    }
    for (const auto& pert : c.perturbations) {
        ClosedForms cf = evaluate_closed_forms(p, c.k);
        try {
            apply_perturbation(cf, pert);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("bad perturbation: ") + e.what());
        }
    }
}

json export_closed_forms(const ClosedForms& cf)
{
    json j;
    j["q"] = cf.params.q;
    j["D"] = cf.params.D;
    j["N"] = cf.params.N;
    j["k"] = cf.k;
    j["vertex_count"] = cf.vertex_count.str();
    json th = json::array(), ths = json::array();
    for (const auto& v : cf.spec.theta) th.push_back(rat(v));
    for (const auto& v : cf.spec.theta_star) ths.push_back(rat(v));
    j["theta"] = th;
    j["theta_star"] = ths;
    j["osize"] = vec_json(cf.mats.osize);
    j["C"] = mat_json(cf.mats.C);
    j["H"] = mat_json(cf.mats.H);
    j["G"] = mat_json(cf.mats.G);
    json d = json::object();
    for (const auto& [l, M] : cf.mats.Dmat) d[std::to_string(l)] = mat_json(M);
    j["D_matrices"] = d;
    const auto& t = cf.scalars;
    j["lambda"] = vec_json(t.lambda);
    j["mu"] = vec_json(t.mu);
    j["gamma"] = vec_json(t.gamma);
    j["omega"] = vec_json(t.omega);
    j["eta"] = vec_json(t.eta);
    j["eps"] = vec_json(t.epsfac);
    j["vartheta"] = vec_json(t.vartheta);
    return j;
}

json report_json(const RunConfig& c, const std::vector<CheckResult>& results)
{
    json cfg;
    cfg["q"] = c.q;
    cfg["D"] = c.D;
    cfg["N"] = c.N;
    cfg["k"] = c.k;
    cfg["pair_mode"] = pair_mode_name(c.pair_mode);
    if (c.pair_mode == PairMode::random) cfg["seed"] = c.seed;
    if (c.pair_mode == PairMode::explicit_pair) {
        cfg["x"] = c.x_text;
        cfg["y"] = c.y_text;
    }
    cfg["checks"] = c.checks;
    cfg["heavy"] = c.heavy;
    cfg["n_max_words"] = c.n_max_words;
    cfg["cross_table"] = c.cross_mode == CrossTableMode::memory ? "memory" : "recompute";
    if (!c.perturbations.empty()) {
        json p = json::array();
        for (const auto& pt : c.perturbations)
            p.push_back(pt.table + ":" + std::to_string(pt.i) + ":" + std::to_string(pt.j) + ":" + to_string(pt.delta));
        cfg["perturbations"] = p;
    }
    json checks = json::array();
    std::map<std::string, int> counts{{"pass", 0}, {"fail", 0}, {"skipped", 0}, {"consistent", 0}, {"refuted", 0}};
    for (const auto& r : results) {
        checks.push_back(to_json(r, c.timings));
        ++counts[to_string(r.status)];
    }
    json summary;
    for (const char* k : {"pass", "fail", "skipped", "consistent", "refuted"}) summary[k] = counts[k];
    return json{{"config", cfg}, {"library_version", kLibraryVersion}, {"checks", checks}, {"summary", summary}};
}

RunOutcome run(const RunConfig& c, const ProgressFn& progress)
{
    validate_config(c);
    auto say = [&](const std::string& s) {
        if (progress) progress(s);
    };
    const GraphParams p{c.q, c.D, c.N};

    // which groups are wanted
    std::set<std::string> wanted_groups, wanted_names;
    for (const auto& name : c.checks) {
        if (name == "all") {
            for (const auto& g : kGroups)
                if (g != "heavy" || c.heavy) wanted_groups.insert(g);
        } else if (std::find(kGroups.begin(), kGroups.end(), name) != kGroups.end()) {
            wanted_groups.insert(name);
        } else {
            wanted_names.insert(name);
            wanted_groups.insert(find_entry(name)->group);
        }
    }
    auto selected = [&](const CheckResult& r) {
        if (wanted_names.count(r.name)) return true;
        for (const auto& name : c.checks) {
            const CatalogEntry* e = find_entry(r.name);
            if (name == "all" && (!e || e->group != "heavy" || c.heavy)) return true;
            if (e && e->group == name) return true;
        }
        return false;
    };
    auto need = [&](std::initializer_list<const char*> gs) {
        for (const char* g : gs)
            if (wanted_groups.count(g)) return true;
        return false;
    };

    ClosedForms cf = evaluate_closed_forms(p, c.k);
    for (const auto& pt : c.perturbations) apply_perturbation(cf, pt);

    std::vector<CheckResult> all;
    auto append = [&](std::vector<CheckResult> rs) { all.insert(all.end(), rs.begin(), rs.end()); };

    if (need({"params"})) {
        say("parameter and closed-form suite");
        append(timed([&] { return verify_parameters(p); }));
        append(timed([&] { return verify_closed_form_identities(cf); }));
    }

    const bool graph_work = need({"bfs", "local", "e", "heavy"}) || wanted_names.count("s-model-faithful");
    bool metric_ok = true;
    if (graph_work) {
        say("rank-metric audit");
        auto bfs = timed([&] { return bfs_audit_checks_cached(p, c.cache_dir); });
        for (const auto& r : bfs) metric_ok = metric_ok && !r.failed();
        append(std::move(bfs));
    }

    std::optional<LocalContext> ctx;
    std::string ctx_reason;
    if (graph_work && metric_ok) {
        MatVertex x, y;
        if (c.pair_mode == PairMode::canonical) std::tie(x, y) = canonical_pair(p, c.k);
        else if (c.pair_mode == PairMode::random) std::tie(x, y) = random_pair(p, c.k, c.seed);
        else {
            x = MatVertex::parse(c.D, c.N - c.D, c.x_text, c.q);
            y = MatVertex::parse(c.D, c.N - c.D, c.y_text, c.q);
        }
        say("local context");
        const auto t0 = std::chrono::steady_clock::now();
        try {
            std::filesystem::path file;
            if (!c.cache_dir.empty()) {
                file = LocalContext::cache_file(c.cache_dir, p, c.k, LocalContext::pair_hash(x, y));
                ctx = LocalContext::load(file, p, x, y, c.cross_mode, c.threads);
            }
            if (!ctx) {
                ctx = LocalContext::build(p, x, y, c.cross_mode, c.threads);
                if (!file.empty()) {
                    std::filesystem::create_directories(c.cache_dir);
                    ctx->save(file);
                }
            }
        } catch (const StructuralViolation& e) {
            ctx_reason = "classification failed";
            all.push_back(make_result("partition-classify", find_entry("partition-classify")->anchor, false, e.witness()));
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        say("local context ready (" + std::to_string(ms) + " ms)");
    } else if (graph_work) {
        ctx_reason = "rank-metric audit failed";
    }

    if (need({"local"})) {
        if (ctx) {
            say("partition suite");
            append(timed([&] { return verify_partition(*ctx, cf); }));
            append(timed([&] { return local_spectrum_check(*ctx); }));
            append(timed([&] { return std::vector<CheckResult>{rank_metric_spot_checks(*ctx, 20, c.seed)}; }));
        } else {
            append(skip_group("local", ctx_reason));
        }
    }

    std::optional<AtomGram> atoms;
    if (ctx && (need({"e"}) || wanted_names.count("s-model-faithful") || need({"s"}))) {
        say("counted atom Gram");
        atoms = build_atom_gram(*ctx);
    }
    if (need({"e"})) {
        if (atoms) {
            say("E-oracle identities");
            append(timed([&] { return verify_e_identities(*atoms, cf); }));
            append(timed([&] { return verify_local_basis(*ctx, cf, c.seed); }));
        } else {
            append(skip_group("e", ctx_reason));
        }
    }

    std::optional<SModel> model;
    std::string model_reason;
    try {
        model = build_s_model(cf);
    } catch (const InvalidParameters& e) {
        model_reason = e.what();
    }
    if (need({"s"})) {
        say("S-model");
        if (model) {
            append(timed([&] { return verify_s_model(*model); }));
            if (atoms) append(timed([&] { return std::vector<CheckResult>{verify_s_model_faithful(*model, *atoms, c.seed)}; }));
            else append({make_skipped("s-model-faithful", find_entry("s-model-faithful")->anchor, ctx_reason.empty() ? "no local context" : ctx_reason)});
        } else {
            CheckResult r = make_result("s-swap-map", find_entry("s-swap-map")->anchor, false, json{{"error", model_reason}});
            all.push_back(r);
        }
    }

    std::optional<NortonOps> ops;
    std::string ops_reason = model ? "" : "S-model unavailable";
    if (model && need({"norton", "heavy"})) {
        try {
            ops = build_norton_ops(*model);
        } catch (const NortonInvariantError& e) {
            ops_reason = e.what();
            all.push_back(make_result("norton-commutativity", find_entry("norton-commutativity")->anchor, false, e.witness()));
        }
    }
    if (need({"norton"})) {
        if (ops) {
            say("Norton suite");
            append(timed([&] { return verify_norton_identities(*ops); }));
            append(timed([&] { return verify_omega(*ops); }));
            append(timed([&] { return verify_generation(*ops); }));
            say("word check up to length " + std::to_string(c.n_max_words));
            append(timed([&] { return bbalanced_word_check(*ops, c.n_max_words); }));
        } else {
            append(skip_group("norton", ops_reason));
        }
    }

    if (need({"heavy"})) {
        if (!c.heavy) {
            append(skip_group("heavy", "heavy mode not enabled (--heavy)"));
        } else if (ops && ctx) {
            say("heavy mode: brute-force triple sums over all vertices");
            std::optional<HeavyOracle> oracle;
            try {
                oracle = HeavyOracle::for_atoms(*ctx);
            } catch (const InvalidParameters& e) {
                append(skip_group("heavy", e.what()));
            }
            if (oracle) {
                say("heavy mode: " + std::to_string(oracle->signature_count()) + " vertex signatures");
                append(timed([&] { return heavy_checks(*ops, *oracle, c.seed); }));
                append(timed([&] { return conjecture_probe(*ops, *oracle); }));
            }
        } else {
            append(skip_group("heavy", ops ? ctx_reason : ops_reason));
        }
    }

    // keep the requested entries; drop duplicates produced by failure paths
    std::vector<CheckResult> out;
    std::set<std::string> seen;
    for (auto& r : all)
        if (selected(r) && seen.insert(r.name).second) out.push_back(std::move(r));

    RunOutcome outcome;
    outcome.results = std::move(out);
    outcome.report = report_json(c, outcome.results);
    outcome.exit_code = 0;
    for (const auto& r : outcome.results)
        if (r.failed()) outcome.exit_code = 1;
    return outcome;
}

}  // namespace bsc

namespace bsc {
const std::vector<CatalogEntry>& check_catalog()
{
    static const std::vector<CatalogEntry> c{
        {"params-intersection-numbers", "params", "c_i + a_i + b_i = kappa; a_i = [i](q^{N-D} + q^D - q^i - q^{i-1} - 1)"},
        {"params-spectrum", "params", "theta_0 = kappa > theta_1 > ... > theta_D; theta*_i = theta_i"},
        {"params-three-term", "params", "th*_{i-1} c_i + th*_i a_i + th*_{i+1} b_i = theta_1 th*_i"},
        {"params-eigenspace-dimension", "params", "dim EV = th*_0 = (q^{N-D}-1)(q^D-1)/(q-1)"},
        {"params-krein-q111", "params", "q^1_{11} = a_1 = q^{N-D} + q^D - q - 2"},
        {"params-sphere-sizes", "params", "1 + sum_i k_i = |X| with k_i = b_0...b_{i-1}/(c_1...c_i)"},
        {"cf-partition-sizes", "params", "|O_1| + ... + |O_6| = kappa, every |O_i| > 0"},
        {"cf-c-row-sums", "params", "each row of C sums to a_1; entries are nonnegative integers"},
        {"cf-c-symmetric", "params", "diag(|O|) C is symmetric"},
        {"cf-h-eigenvectors", "params", "C H = H diag(vartheta_1..vartheta_6)"},
        {"cf-h-gram-eta", "params", "H^t diag(|O|) H = diag(eta), eta_i > 0, H invertible"},
        {"cf-g-two-forms", "params", "G_ij = |O_i|(...C_ij...) = |O_j|(...C_ji...)"},
        {"cf-htgh", "params", "H^t G H = diag(eps_j eta_j), eps_1 = theta_1^2"},
        {"cf-lambda-two-way", "params", "lambda_i = |O_i|(th*_1 - th*_{k+eps(i)})/(th*_0 - th*_k) = factored closed forms"},
        {"cf-lambda-sum", "params", "theta_1 = lambda_1 + ... + lambda_6"},
        {"cf-mu-two-way", "params", "mu_j = sum_i lambda_i H_ij = closed forms; mu_1 = theta_1, mu_6 = 0"},
        {"cf-gamma-mu-sums", "params", "sum_j gamma_j mu_j = -1, sum_j vartheta_j gamma_j mu_j = 0, gamma_6 = 0"},
        {"cf-tables-shape", "params", "eps(i) = (-1,0,0,0,0,1); vartheta_1 = a_1; vartheta_5 = vartheta_6"},
        {"cf-omega-coefficients", "params", "omega_i = H_{i,6} (printed coefficient list)"},
        {"cf-step2-grid", "params", "d_ij th*_0 + C_ij th*_1 + (|O_j| - C_ij - d_ij) th*_2 - sum_l D^(l)_ij th*_l = lambda_j (th*_1 - th*_{k+eps(i)})"},
        {"cf-d-matrices", "params", "sum_l D^(l)_ij = |O_j|; entries nonnegative integers; D^(k+2) = 0 iff k = D-1"},
        {"bfs-rank-metric", "bfs", "breadth-first distance from 0 equals rank(v) for every vertex"},
        {"bfs-sphere-sizes", "bfs", "|Gamma_i(0)| = b_0...b_{i-1}/(c_1...c_i) and the spheres cover X"},
        {"local-neighbors", "local", "|Gamma(x)| = kappa; every neighbour differs from x by a rank-one matrix"},
        {"partition-classify", "local", "every z in Gamma(x) matches exactly one of the six (distance, n-, n+) patterns"},
        {"partition-sizes", "local", "|O_i| = |O'_i| = closed-form sizes"},
        {"partition-equitable", "local", "the y-partition of Gamma(x) is equitable with quotient matrix C"},
        {"partition-swap-equitable", "local", "the x-partition of Gamma(y) is equitable with the same quotient matrix C"},
        {"partition-distance-matrices", "local", "D^(l)_ij = #{vertices of O'_j at distance l from a vertex of O_i}, l = k-2..k+2"},
        {"local-spectrum-annihilator", "local", "(A - a1)(A - (q^{N-D}-q-1))(A - (q^D-q-1))(A + 1)(A + q) = 0 on the local graph"},
        {"local-spectrum-multiplicities", "local", "local multiplicities 1, (q^D-q)/(q-1), (q^{N-D}-q)/(q-1), (q^D-1)(q^{N-D}-1)(q-2)/(q-1)^2, (q^D-q)(q^{N-D}-q)/(q-1)^2 from trace(A^m)"},
        {"rank-metric-spot-checks", "local", "rank distance satisfies the triangle inequality and every vertex at rank distance d > 0 has a neighbour at d - 1 and none below"},
        {"e-inner-basics", "e", "<Ex,Ex> = theta*_0/|X|, <Ex,Ey> = theta*_k/|X|, Ex and Ey independent"},
        {"lemma-osum", "e", "theta_1 Ex = sum_i E O_i, and likewise for y and the O'_i"},
        {"lemma-y-in-S", "e", "Ey + (1-q^{1-k})/(q-1) Ex - q^{1-k} E O_1 + q^{1-k} E O_2 = 0"},
        {"s-dimension", "s", "E O_1, ..., E O_6 are linearly independent (dim S = 6)"},
        {"gram-matches-closed-form", "e", "|X| <E O_i, E O_j> = G_ij = |X| <E O'_i, E O'_j>"},
        {"thm-strengthened-bsc", "e", "E O_i - E O'_i = lambda_i (Ex - Ey) for i = 1..6"},
        {"h-orthogonal", "e", "<h_i, h_j> = delta_ij eps_j eta_j / |X| and likewise for h'_j"},
        {"h-minus-hprime", "e", "h_j - h'_j = mu_j (Ex - Ey)"},
        {"x-orth-h", "e", "<Ex, h_1> = theta_1 eta_1 / |X|, <Ex, h_j> = 0 for j > 1, h_1 = theta_1 Ex"},
        {"y-gamma-expansion", "e", "Ey = sum_j gamma_j h_j"},
        {"ovee-identities", "e", "sum_i E O^v_i = 0, Ex + Ey = q^{1-k}(E O^v_1 - E O^v_2), <E O^v_i, Ex - Ey> = 0"},
        {"sym-asym-decomposition", "e", "S = Sym(S) + ASym(S) orthogonally with dimensions 5 and 1"},
        {"hvee-identities", "e", "h^v_1 = 0, Ex + Ey = sum_{j=2..5} gamma_j h^v_j, h^v_j = sum_i H_ij E O^v_i, h^v_2..h^v_6 a basis of Sym(S)"},
        {"local-basis-scalars", "e", "theta_1 theta*_1 != 0 and (theta*_1 - theta*_2)(eta + q + 1) != 0 for each nontrivial local eigenvalue eta"},
        {"local-basis-f-of-A", "e", "f(A) = J on the local graph, f of degree 4 with the nontrivial local eigenvalues as roots and f(a_1) = kappa"},
        {"local-basis-gram-spot", "e", "the Gram matrix of E z for six random z in Gamma(x) is nonsingular"},
        {"s-gram-positive-definite", "s", "G is positive definite: all leading principal minors > 0"},
        {"s-swap-map", "s", "T maps x^ to y^, is an involution and an isometry of G"},
        {"s-h-basis", "s", "h_1..h_6 is an orthogonal basis of S with |h_j|^2 = eps_j eta_j/|X|; h_1 = theta_1 x^"},
        {"s-y-gamma", "s", "y^ = sum_j gamma_j h_j, sum_j gamma_j mu_j = -1"},
        {"s-h-minus-hprime", "s", "h_j - h'_j = mu_j (x^ - y^)"},
        {"s-sym-asym", "s", "S = Sym(S) + ASym(S) orthogonally, dimensions 5 and 1; O^v_i symmetric and orthogonal to x^ - y^"},
        {"s-hvee", "s", "h^v_1 = 0, h^v_j = sum_i H_ij O^v_i, x^ + y^ = sum_{j=2..5} gamma_j h^v_j, h^v_2..h^v_6 a basis of Sym(S)"},
        {"s-omega-coordinates", "s", "omega = h_6 = h'_6 = h^v_6 with the listed coefficients omega_i"},
        {"s-model-faithful", "s", "<u, v>_G/|X| equals the counted <E lift(u), E lift(v)>; the model coordinates of y^ lift to Ey"},
        {"norton-commutativity", "norton", "E x * E y is the same through Lx and Ly"},
        {"lemma-x-star-x", "norton", "E x * E x = q^1_{11} |X|^{-1} E x, and likewise for y"},
        {"lemma-x-star-y", "norton", "|X|(th_1-th_2) E x * E y = (th*_{k-1}-th*_k) E O_1 + (th*_{k+1}-th*_k) E O_6 + (th_1-th_2) th*_k E x + (th_2-th_0) E y, and the symmetric O^v form"},
        {"prop-h-eigen", "norton", "E x * h_j = |X|^{-1} vartheta_j h_j and E y * h'_j = |X|^{-1} vartheta_j h'_j"},
        {"lemma-x-star-ovee", "norton", "E x * O^v_j = |X|^{-1} sum_i C_ij O^v_i + |X|^{-1}(sum_i lambda_i C_ij - lambda_j q^1_{11}) E x, and with y and E y"},
        {"prop-sym-star-asym", "norton", "E O^v_j * (E x - E y) = (s_j/|X|)(E x - E y) with the six listed s_j"},
        {"prop-star-sym-asym-closure", "norton", "Sym * ASym in ASym, ASym * ASym in Sym, (E x + E y) * Sym in Sym, E x * E y in Sym"},
        {"lemma-x-star-y-h", "norton", "E x * E y = |X|^{-1} sum_{j<=5} gamma_j vartheta_j h_j = |X|^{-1} sum_{j=2..5} gamma_j vartheta_j h^v_j"},
        {"lemma-star-hvee", "norton", "E x * h^v_j = |X|^{-1} vartheta_j h^v_j + |X|^{-1}(vartheta_j - vartheta_1) mu_j E x; h^v_j * (E x - E y) and (E x + E y) * h^v_j accordingly"},
        {"prop-omega-eigen", "norton", "E x * omega = E y * omega = -q |X|^{-1} omega"},
        {"lemma-omega-symmetric", "norton", "omega(x, y) = omega(y, x)"},
        {"lemma-omega-perp-action", "norton", "E x, E y in omega-perp and E x * omega-perp, E y * omega-perp in omega-perp"},
        {"lemma-omega-perp-bases", "norton", "h_1..h_5 and h'_1..h'_5 are bases of omega-perp"},
        {"lemma-omega-3facts", "norton", "S = span(omega) + omega-perp, omega-perp = ASym + (omega-perp cap Sym), Sym = span(omega) + (omega-perp cap Sym), all orthogonal; dim(omega-perp cap Sym) = 4"},
        {"prop-wperp-generation-x", "norton", "E y, E x * E y, E x * (E x * E y), ... (five vectors) form a basis of omega-perp"},
        {"prop-wperp-generation-y", "norton", "E x, E y * E x, E y * (E y * E x), ... (five vectors) form a basis of omega-perp"},
        {"prop-bbb-basis", "norton", "B, B * B, B * (B * B), B * (B * (B * B)) with B = E x + E y form a basis of omega-perp cap Sym(S)"},
        {"thm-bbalanced", "norton", "for every word w over {x, y}, v(w) - v(w-bar) lies in span{E x - E y}"},
        {"words-swap-equivariant", "norton", "v(w-bar) = sigma(v(w)) for every word w"},
        {"heavy-triple-xxx", "heavy", "sum_z f_x(z)^3 = q^1_{11} theta*_0 / |X|^2"},
        {"heavy-triple-adjacency", "heavy", "<E x * E O_j, E O_i> = |X|^{-2} sum_l C_lj G_li"},
        {"heavy-triple-permutation", "heavy", "<u * v, w> is symmetric in its three arguments"},
        {"heavy-calibration-lx-y", "heavy", "brute-force <E x * lift(y), lift(t)> equals <Lx y, t>_G for five test vectors t"},
        {"heavy-cross-validation", "heavy", "brute-force <E x * lift(s), lift(t)> equals <Lx s, t>_G for random s, t"},
        {"heavy-x-star-y-sym", "heavy", "<E x * E y, E x - E y> = 0 (E x * E y in Sym(S))"},
        {"conj-sym-star-sym", "heavy", "Sym(S) * Sym(S) in Sym(S): <E O^v_i * E O^v_j, E x - E y> = 0 for all i, j (necessary condition)", true},
    };
    return c;
}
}  // namespace bsc

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rsdual/rsdual.hpp"

using namespace rsdual;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

double parse_number(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw UsageError("bad number '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw UsageError("bad number '" + s + "'");
    }
}

int parse_int(const std::string& s) {
    const double v = parse_number(s);
    if (v != std::floor(v)) throw UsageError("expected an integer, got '" + s + "'");
    return int(v);
}

// "pi/(2n)" (the default), or a number.
double coupling_value(const std::string& rule, int n) {
    if (rule.empty() || rule == "pi/(2n)") return kPi / (2.0 * n);
    return parse_number(rule);
}

std::string read_arg(const std::string& s) {
    if (s.empty() || s[0] != '@') return s;
    std::ifstream in(s.substr(1));
    if (!in) throw UsageError("cannot read " + s.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ProjectivePoint load_point(const std::string& arg, const Coupling& c) {
    json j;
    try {
        j = json::parse(read_arg(arg));
    } catch (const json::exception& e) {
        throw UsageError(std::string("point is not valid JSON: ") + e.what());
    }
    CVector v;
    try {
        v = point_vector_from_json(j);
    } catch (const json::exception& e) {
        throw UsageError(std::string("point is malformed: ") + e.what());
    }
    if (v.size() != c.n()) throw UsageError("point has " + std::to_string(v.size()) + " entries, n is " + std::to_string(c.n()));
    bool canonical = true;
    const ProjectivePoint p = point_from_json(j, c, &canonical);
    if (!canonical) std::cerr << "warning: input point was not canonical; using its canonical representative\n";
    return p;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

Side parse_side(const std::string& s) {
    if (s == "a" || s == "A" || s == "first") return Side::First;
    if (s == "b" || s == "B" || s == "second") return Side::Second;
    throw UsageError("side must be a or b");
}

// Hamiltonian names use 1-based indices.
InvariantHamiltonian parse_hamiltonian(const std::string& name, Side side, int n) {
    const auto colon = name.find(':');
    const std::string kind = name.substr(0, colon);
    const bool has_arg = colon != std::string::npos;
    const int arg = has_arg ? parse_int(name.substr(colon + 1)) : 0;
    auto index = [&]() {
        if (!has_arg || arg < 1 || arg > n - 1) throw UsageError("index in '" + name + "' must lie in 1.." + std::to_string(n - 1));
        return arg - 1;
    };
    if (kind == "retrace" || kind == "imtrace") {
        if (!has_arg || arg == 0) throw UsageError("trace power in '" + name + "' must be a nonzero integer");
        return kind == "retrace" ? InvariantHamiltonian::re_trace(arg, side) : InvariantHamiltonian::im_trace(arg, side);
    }
    if (kind == "spectral") return InvariantHamiltonian::spectral(index(), side);
    if (kind == "position") return InvariantHamiltonian::spectral(index(), Side::Second);
    if (kind == "action") return InvariantHamiltonian::spectral(index(), Side::First);
    if (kind == "twist" && !has_arg) return InvariantHamiltonian::twist(Side::Second);
    if (kind == "twist-tilde" && !has_arg) return InvariantHamiltonian::twist(Side::First);
    throw UsageError("unknown Hamiltonian '" + name + "'");
}

json point_report(const ProjectivePoint& u, const Coupling& c) {
    return {{"point", point_to_json(u)},
            {"J", real_vector_to_json(moment_J(u, c))},
            {"actions", real_vector_to_json(action_variables(u, c))}};
}

struct Common {
    int n = 2;
    std::string y;
    Coupling coupling() const {
        if (n < 2) throw UsageError("n must be at least 2");
        return Coupling(n, coupling_value(y, n));
    }
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--n", c.n, "Rank parameter n >= 2")->required();
    sub->add_option("--y", c.y, "Coupling y in (0, pi/n), or pi/(2n)");
}

int run_verify(const std::string& n_arg, const std::string& y_arg, int samples, std::uint64_t seed,
               const std::string& checks, const std::vector<std::string>& tols, int jobs, double fd_step,
               const std::string& out) {
    SuiteConfig cfg;
    cfg.n_list.clear();
    for (const auto& s : split(n_arg, ',')) cfg.n_list.push_back(parse_int(s));
    if (!y_arg.empty() && y_arg != "pi/(2n)") {
        cfg.y_rule = "explicit";
        for (const auto& s : split(y_arg, ',')) cfg.y_values.push_back(parse_number(s));
    }
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.checks = split(checks, ',');
    for (const auto& t : tols) {
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw UsageError("--tol expects name=value, got '" + t + "'");
        cfg.tolerances[t.substr(0, eq)] = parse_number(t.substr(eq + 1));
    }
    cfg.jobs = jobs;
    cfg.fd_step = fd_step;
    const SuiteReport rep = run_suite(cfg);
    for (const auto& r : rep.results)
        std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << " n=" << r.n << " y=" << format_double(r.y)
                  << " max=" << r.max_residual << " tol=" << r.tolerance << (r.error.empty() ? "" : " error: " + r.error)
                  << "\n";
    emit(to_json(rep).dump(2) + "\n", out);
    return rep.all_pass() ? 0 : 1;
}

int run_flow(const Common& cm, const std::string& ham, const std::string& side, double t, int steps,
             const std::string& point, const std::string& out) {
    const Coupling c = cm.coupling();
    if (steps < 1) throw UsageError("steps must be positive");
    const InvariantHamiltonian h = parse_hamiltonian(ham, parse_side(side), c.n());
    const ProjectivePoint u0 = load_point(point, c);
    std::ostringstream csv;
    csv << "step,t";
    for (int k = 1; k <= c.n(); ++k) csv << ",re_u" << k << ",im_u" << k;
    for (int k = 1; k < c.n(); ++k) csv << ",J" << k;
    for (int k = 1; k < c.n(); ++k) csv << ",action" << k;
    csv << "\n";
    for (int s = 0; s <= steps; ++s) {
        const double ts = t * s / steps;
        const ProjectivePoint u = s == 0 ? u0 : reduced_flow(u0, h, ts, c);
        csv << s << "," << format_double(ts);
        for (int k = 0; k < c.n(); ++k) csv << "," << format_double(u(k).real()) << "," << format_double(u(k).imag());
        const RVector J = moment_J(u, c), act = action_variables(u, c);
        for (int k = 0; k < c.n() - 1; ++k) csv << "," << format_double(J(k));
        for (int k = 0; k < c.n() - 1; ++k) csv << "," << format_double(act(k));
        csv << "\n";
    }
    emit(csv.str(), out);
    return 0;
}

int run_duality(const Common& cm, const std::string& map, const std::string& point, const std::string& out) {
    const Coupling c = cm.coupling();
    Duality d;
    try {
        d = parse_duality(map);
    } catch (const DomainViolation& e) {
        throw UsageError(e.what());
    }
    const ProjectivePoint u = load_point(point, c);
    json j{{"map", map}, {"input", point_report(u, c)}, {"output", point_report(duality(d, u, c), c)}};
    emit(j.dump(2) + "\n", out);
    return 0;
}

int run_mapclass(const Common& cm, const std::string& word, const std::string& point, const std::string& out) {
    const Coupling c = cm.coupling();
    std::vector<Automorphism> w;
    for (const auto& s : split(word, ',')) {
        try {
            w.push_back(parse_automorphism(s));
        } catch (const DomainViolation& e) {
            throw UsageError(e.what());
        }
    }
    if (w.empty()) throw UsageError("word is empty");
    const ProjectivePoint u = load_point(point, c);
    json j{{"word", word}, {"input", point_report(u, c)}, {"output", point_report(mapclass_on_P(w, u, c), c)}};
    emit(j.dump(2) + "\n", out);
    return 0;
}

int run_polytope(const Common& cm, int samples, std::uint64_t seed, const std::string& out) {
    const Coupling c = cm.coupling();
    if (samples < 1) throw UsageError("samples must be positive");
    double worst_J = 0.0, worst_act = 0.0;
    json pts = json::array();
    for (int s = 0; s < samples; ++s) {
        Rng rng = sample_rng(seed, "polytope", c.n(), s);
        const ProjectivePoint u = random_point(c, rng);
        const RVector J = moment_J(u, c), act = action_variables(u, c);
        worst_J = std::max(worst_J, checks::polytope_violation(J, c));
        worst_act = std::max(worst_act, checks::polytope_violation(act, c));
        pts.push_back({{"J", real_vector_to_json(J)}, {"actions", real_vector_to_json(act)}});
    }
    json j{{"n", c.n()}, {"y", c.y()}, {"max_violation_J", worst_J}, {"max_violation_actions", worst_act},
           {"samples", pts}};
    emit(j.dump(2) + "\n", out);
    return 0;
}

int run_map_point(const Common& cm, const std::string& point, const std::string& out) {
    const Coupling c = cm.coupling();
    const ProjectivePoint u = load_point(point, c);
    json j = point_report(u, c);
    j["J_full"] = real_vector_to_json(moment_J_full(u, c));
    j["lax"] = matrix_to_json(global_lax(u, c));
    const DoublePoint fb = section_F(u, c);
    j["f_beta"] = {{"A", matrix_to_json(fb.A)}, {"B", matrix_to_json(fb.B)}};
    const DoublePoint fa = f_alpha(u, c).rep;
    j["f_alpha"] = {{"A", matrix_to_json(fa.A)}, {"B", matrix_to_json(fa.B)}};
    j["constraint_residual"] = constraint_residual(fb, c);
    emit(j.dump(2) + "\n", out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ruijsenaars duality on CP^{n-1}: checks, flows and maps"};
    app.require_subcommand(1);

    std::string v_n = "2,3", v_y, v_checks, v_out;
    int v_samples = 50, v_jobs = 1;
    std::uint64_t v_seed = 1;
    double v_fd = 1e-5;
    std::vector<std::string> v_tols;
    auto* verify = app.add_subcommand("verify", "Run the property suite and print a JSON report");
    verify->add_option("--n", v_n, "Comma-separated list of n");
    verify->add_option("--y", v_y, "pi/(2n) or a comma-separated list of couplings");
    verify->add_option("--samples", v_samples, "Samples per check");
    verify->add_option("--seed", v_seed, "Base seed");
    verify->add_option("--checks", v_checks, "Comma-separated check names or groups");
    verify->add_option("--tol", v_tols, "Tolerance override name=value")->take_all();
    verify->add_option("--jobs", v_jobs, "Worker threads");
    verify->add_option("--fd-step", v_fd, "Finite difference step");
    verify->add_option("--out", v_out, "Write the report to a file");
    app.add_subcommand("list-checks", "Print the names of all checks");

    Common f_c;
    std::string f_ham, f_side = "b", f_point, f_out;
    double f_t = 1.0;
    int f_steps = 10;
    auto* flow_cmd = app.add_subcommand("flow", "Integrate a reduced Hamiltonian flow and print CSV");
    add_common(flow_cmd, f_c);
    flow_cmd->add_option("--hamiltonian", f_ham,
                         "retrace:m, imtrace:m, spectral:j, position:j, action:j, twist or twist-tilde")
        ->required();
    flow_cmd->add_option("--side", f_side, "a or b, for retrace, imtrace and spectral");
    flow_cmd->add_option("--t", f_t, "Final time");
    flow_cmd->add_option("--steps", f_steps, "Number of output steps");
    flow_cmd->add_option("--point", f_point, "Initial point as JSON, or @file")->required();
    flow_cmd->add_option("--out", f_out, "Write CSV to a file");

    Common d_c;
    std::string d_map = "S", d_point, d_out;
    auto* dual_cmd = app.add_subcommand("duality", "Apply S, S_inv or R to a point");
    add_common(dual_cmd, d_c);
    dual_cmd->add_option("--map", d_map, "S, S_inv or R");
    dual_cmd->add_option("--point", d_point, "Point as JSON, or @file")->required();
    dual_cmd->add_option("--out", d_out, "Write JSON to a file");

    Common m_c;
    std::string m_word, m_point, m_out;
    auto* map_cmd = app.add_subcommand("mapclass", "Apply a word in S, T, Ttilde, Q, nu to a point");
    add_common(map_cmd, m_c);
    map_cmd->add_option("--word", m_word, "Comma-separated word, applied left to right")->required();
    map_cmd->add_option("--point", m_point, "Point as JSON, or @file")->required();
    map_cmd->add_option("--out", m_out, "Write JSON to a file");

    Common p_c;
    int p_samples = 100;
    std::uint64_t p_seed = 1;
    std::string p_out;
    auto* poly_cmd = app.add_subcommand("polytope", "Sample J and the action variables over random points");
    add_common(poly_cmd, p_c);
    poly_cmd->add_option("--samples", p_samples, "Number of points");
    poly_cmd->add_option("--seed", p_seed, "Seed");
    poly_cmd->add_option("--out", p_out, "Write JSON to a file");

    Common e_c;
    std::string e_point, e_out;
    auto* mp_cmd = app.add_subcommand("map-point", "Evaluate J, the Lax matrix and both sections at a point");
    add_common(mp_cmd, e_c);
    mp_cmd->add_option("--point", e_point, "Point as JSON, or @file")->required();
    mp_cmd->add_option("--out", e_out, "Write JSON to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verify) return run_verify(v_n, v_y, v_samples, v_seed, v_checks, v_tols, v_jobs, v_fd, v_out);
        if (app.got_subcommand("list-checks")) {
            for (const auto& name : check_names()) std::cout << name << "\n";
            return 0;
        }
        if (*flow_cmd) return run_flow(f_c, f_ham, f_side, f_t, f_steps, f_point, f_out);
        if (*dual_cmd) return run_duality(d_c, d_map, d_point, d_out);
        if (*map_cmd) return run_mapclass(m_c, m_word, m_point, m_out);
        if (*poly_cmd) return run_polytope(p_c, p_samples, p_seed, p_out);
        if (*mp_cmd) return run_map_point(e_c, e_point, e_out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
    return 2;
}

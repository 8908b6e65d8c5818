#include "stefan_front/io.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace stefan_front::io {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string to_string(Command command) {
    switch (command) {
        case Command::Simulate: return "simulate";
        case Command::Semiwave: return "semiwave";
        case Command::Threshold: return "threshold";
        case Command::Sweep: return "sweep";
    }
    return "unknown";
}

Command command_from_string(const std::string& name) {
    for (auto c : {Command::Simulate, Command::Semiwave, Command::Threshold, Command::Sweep}) {
        if (to_string(c) == name) return c;
    }
    throw ParseError("command", "unknown command '" + name + "'");
}

Nonlinearity build_nonlinearity(const NonlinearitySpec& spec) {
    if (spec.name == "logistic") return logistic();
    if (spec.name == "cubic_bistable" || spec.name == "combustion") {
        if (!spec.theta) throw ParseError("nonlinearity.theta", spec.name + " needs theta");
        const double th = *spec.theta;
        if (!(th > 0.0 && th < 1.0)) throw ParseError("nonlinearity.theta", "theta must lie in (0,1)");
        return spec.name == "combustion" ? combustion(th) : cubic_bistable(th);
    }
    if (spec.name == "custom") {
        if (spec.coefficients.empty()) throw ParseError("nonlinearity.coefficients", "custom needs coefficients");
        return custom_polynomial(spec.coefficients);
    }
    throw ParseError("nonlinearity.name", "unknown nonlinearity '" + spec.name + "'");
}

namespace {

using Path = std::vector<std::string>;

std::string dotted(const Path& path) {
    std::string s;
    for (const auto& p : path) s += (s.empty() ? "" : ".") + p;
    return s.empty() ? "<root>" : s;
}

InitialFamily family_from_string(const std::string& name) {
    for (auto f : {InitialFamily::CosineBump, InitialFamily::QuadBump, InitialFamily::Samples}) {
        if (to_string(f) == name) return f;
    }
    throw DomainError("unknown u0 family '" + name + "'");
}

class Reader {
public:
    Reader(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

    [[noreturn]] void fail(const Path& path, const std::string& what) const {
        std::string where = source_;
        if (const auto line = line_of(path)) where += ":" + std::to_string(line);
        throw ParseError(where + " " + dotted(path), what);
    }

    void keys(const json& obj, const Path& path, std::initializer_list<const char*> allowed) const {
        if (!obj.is_object()) fail(path, "expected an object");
        for (const auto& [k, v] : obj.items()) {
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; })) {
                auto p = path;
                p.push_back(k);
                fail(p, "unknown key");
            }
        }
    }

    const json* find(const json& obj, const char* key) const {
        const auto it = obj.find(key);
        return it == obj.end() ? nullptr : &*it;
    }

    void number(const json& obj, const Path& path, const char* key, double& out) const {
        if (const auto* v = find(obj, key)) {
            if (!v->is_number()) fail(sub(path, key), "expected a number");
            out = v->get<double>();
            if (!std::isfinite(out)) fail(sub(path, key), "expected a finite number");
        }
    }

    void integer(const json& obj, const Path& path, const char* key, int& out) const {
        if (const auto* v = find(obj, key)) {
            if (!v->is_number_integer()) fail(sub(path, key), "expected an integer");
            out = v->get<int>();
        }
    }

    void boolean(const json& obj, const Path& path, const char* key, bool& out) const {
        if (const auto* v = find(obj, key)) {
            if (!v->is_boolean()) fail(sub(path, key), "expected true or false");
            out = v->get<bool>();
        }
    }

    void string(const json& obj, const Path& path, const char* key, std::string& out) const {
        if (const auto* v = find(obj, key)) {
            if (!v->is_string()) fail(sub(path, key), "expected a string");
            out = v->get<std::string>();
        }
    }

    void numbers(const json& obj, const Path& path, const char* key, std::vector<double>& out) const {
        if (const auto* v = find(obj, key)) {
            if (!v->is_array()) fail(sub(path, key), "expected an array of numbers");
            out.clear();
            for (const auto& e : *v) {
                if (!e.is_number() || !std::isfinite(e.get<double>())) fail(sub(path, key), "expected an array of numbers");
                out.push_back(e.get<double>());
            }
        }
    }

    static Path sub(Path p, const std::string& key) {
        p.push_back(key);
        return p;
    }

private:
    // Line of the last key of `path`, searching for each key in turn.
    std::size_t line_of(const Path& path) const {
        std::size_t pos = 0;
        for (const auto& key : path) {
            const auto at = text_.find("\"" + key + "\"", pos);
            if (at == std::string::npos) break;
            pos = at;
        }
        if (path.empty() || pos == 0) return 0;
        return 1 + static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + static_cast<long>(pos), '\n'));
    }

    const std::string& text_;
    std::string source_;
};

}  // namespace

JobConfig parse_config_text(const std::string& text, const std::string& source, std::optional<Command> requested) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(std::min(e.byte, text.size())), '\n');
        throw ParseError(source + ":" + std::to_string(line), "invalid JSON");
    }
    const Reader rd(text, source);
    JobConfig job;
    rd.keys(root, {}, {"command", "nonlinearity", "solver", "classifier", "threshold", "sweep", "out_dir",
                       "emit_plot_data", "stop_on_certificate"});

    std::string cmd = to_string(requested.value_or(job.command));
    rd.string(root, {}, "command", cmd);
    try {
        job.command = command_from_string(cmd);
    } catch (const ParseError&) {
        rd.fail({"command"}, "unknown command '" + cmd + "'");
    }
    if (requested && *requested != job.command) {
        rd.fail({"command"}, "file says '" + cmd + "' but '" + to_string(*requested) + "' was requested");
    }
    rd.string(root, {}, "out_dir", job.out_dir);
    rd.boolean(root, {}, "emit_plot_data", job.emit_plot_data);
    rd.boolean(root, {}, "stop_on_certificate", job.stop_on_certificate);

    if (const auto* f = rd.find(root, "nonlinearity")) {
        const Path p{"nonlinearity"};
        rd.keys(*f, p, {"name", "theta", "coefficients"});
        rd.string(*f, p, "name", job.f.name);
        if (rd.find(*f, "theta")) {
            double th = 0.0;
            rd.number(*f, p, "theta", th);
            job.f.theta = th;
        }
        rd.numbers(*f, p, "coefficients", job.f.coefficients);
    }

    auto& sc = job.solver;
    if (const auto* s = rd.find(root, "solver")) {
        const Path p{"solver"};
        rd.keys(*s, p, {"mu", "h0", "N", "dt_safety", "t_max", "snapshot_every", "stop_on_vanish", "front_stride",
                        "u0", "tolerances"});
        rd.number(*s, p, "mu", sc.mu);
        rd.number(*s, p, "h0", sc.h0);
        rd.integer(*s, p, "N", sc.N);
        rd.number(*s, p, "dt_safety", sc.dt_safety);
        rd.number(*s, p, "t_max", sc.t_max);
        rd.number(*s, p, "snapshot_every", sc.snapshot_every);
        rd.boolean(*s, p, "stop_on_vanish", sc.stop_on_vanish);
        rd.integer(*s, p, "front_stride", sc.front_stride);
        if (const auto* u = rd.find(*s, "u0")) {
            const Path q{"solver", "u0"};
            rd.keys(*u, q, {"family", "sigma", "skew", "samples"});
            std::string fam = to_string(sc.u0.family);
            rd.string(*u, q, "family", fam);
            try {
                sc.u0.family = family_from_string(fam);
            } catch (const DomainError& e) {
                rd.fail(Reader::sub(q, "family"), e.what());
            }
            rd.number(*u, q, "sigma", sc.u0.sigma);
            rd.number(*u, q, "skew", sc.u0.skew);
            rd.numbers(*u, q, "samples", sc.u0.samples);
        }
        if (const auto* t = rd.find(*s, "tolerances")) {
            const Path q{"solver", "tolerances"};
            rd.keys(*t, q, {"overshoot_tol", "check_tol", "sign_tol", "blowup_factor", "vanish_tol"});
            rd.number(*t, q, "overshoot_tol", sc.tol.overshoot_tol);
            rd.number(*t, q, "check_tol", sc.tol.check_tol);
            rd.number(*t, q, "sign_tol", sc.tol.sign_tol);
            rd.number(*t, q, "blowup_factor", sc.tol.blowup_factor);
            rd.number(*t, q, "vanish_tol", sc.tol.vanish_tol);
        }
    }

    if (const auto* c = rd.find(root, "classifier")) {
        const Path p{"classifier"};
        rd.keys(*c, p, {"spread_tol", "vanish_tol", "trans_tol", "cert_z_margin"});
        rd.number(*c, p, "spread_tol", job.classifier.spread_tol);
        rd.number(*c, p, "vanish_tol", job.classifier.vanish_tol);
        rd.number(*c, p, "trans_tol", job.classifier.trans_tol);
        rd.number(*c, p, "cert_z_margin", job.classifier.cert_z_margin);
        const auto& o = job.classifier;
        if (!(o.spread_tol > 0 && o.vanish_tol > 0 && o.trans_tol > 0 && o.cert_z_margin > 0)) {
            rd.fail(p, "tolerances must be positive");
        }
    }

    if (const auto* t = rd.find(root, "threshold")) {
        const Path p{"threshold"};
        rd.keys(*t, p, {"tol", "rel_tol", "budget", "extensions"});
        rd.number(*t, p, "tol", job.threshold.tol);
        rd.number(*t, p, "rel_tol", job.threshold.rel_tol);
        rd.integer(*t, p, "budget", job.threshold.budget);
        rd.integer(*t, p, "extensions", job.threshold.extensions);
        if (!(job.threshold.tol > 0.0)) rd.fail(Reader::sub(p, "tol"), "must be positive");
        if (job.threshold.rel_tol < 0.0) rd.fail(Reader::sub(p, "rel_tol"), "must be non-negative");
        if (job.threshold.budget < 10) rd.fail(Reader::sub(p, "budget"), "must be at least 10");
        if (job.threshold.extensions < 0) rd.fail(Reader::sub(p, "extensions"), "must be non-negative");
    }

    if (const auto* s = rd.find(root, "sweep")) {
        const Path p{"sweep"};
        rd.keys(*s, p, {"mu", "sigma", "h0"});
        rd.numbers(*s, p, "mu", job.sweep.mu);
        rd.numbers(*s, p, "sigma", job.sweep.sigma);
        rd.numbers(*s, p, "h0", job.sweep.h0);
        for (const char* axis : {"mu", "sigma", "h0"}) {
            const auto& v = std::string(axis) == "mu" ? job.sweep.mu : std::string(axis) == "sigma" ? job.sweep.sigma : job.sweep.h0;
            for (double x : v) {
                if (!(x > 0.0)) rd.fail(Reader::sub(p, axis), "values must be positive");
            }
        }
    }
    if (job.command == Command::Sweep && job.sweep.mu.empty() && job.sweep.sigma.empty() && job.sweep.h0.empty()) {
        rd.fail({"sweep"}, "a sweep needs at least one non-empty axis");
    }

    try {
        sc.nl = build_nonlinearity(job.f);
    } catch (const ParseError& e) {
        Path key;
        std::stringstream ss(e.where());
        for (std::string part; std::getline(ss, part, '.');) key.push_back(part);
        rd.fail(key, std::string(e.what()).substr(e.where().size() + 2));
    } catch (const Error& e) {
        rd.fail({"nonlinearity"}, e.what());
    }
    try {
        validate(sc);
    } catch (const Error& e) {
        rd.fail({"solver"}, e.what());
    }
    return job;
}

JobConfig parse_config(const fs::path& path, std::optional<Command> requested) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path.filename().string(), requested);
}

ojson to_json(const JobConfig& job) {
    ojson f;
    f["name"] = job.f.name;
    if (job.f.theta) f["theta"] = *job.f.theta;
    if (!job.f.coefficients.empty()) f["coefficients"] = job.f.coefficients;

    const auto& sc = job.solver;
    ojson u0;
    u0["family"] = to_string(sc.u0.family);
    u0["sigma"] = sc.u0.sigma;
    u0["skew"] = sc.u0.skew;
    if (!sc.u0.samples.empty()) u0["samples"] = sc.u0.samples;
    ojson tol;
    tol["overshoot_tol"] = sc.tol.overshoot_tol;
    tol["check_tol"] = sc.tol.check_tol;
    tol["sign_tol"] = sc.tol.sign_tol;
    tol["blowup_factor"] = sc.tol.blowup_factor;
    tol["vanish_tol"] = sc.tol.vanish_tol;
    ojson s;
    s["mu"] = sc.mu;
    s["h0"] = sc.h0;
    s["N"] = sc.N;
    s["dt_safety"] = sc.dt_safety;
    s["t_max"] = sc.t_max;
    s["snapshot_every"] = sc.snapshot_every;
    s["stop_on_vanish"] = sc.stop_on_vanish;
    s["front_stride"] = sc.front_stride;
    s["u0"] = u0;
    s["tolerances"] = tol;

    ojson c;
    c["spread_tol"] = job.classifier.spread_tol;
    c["vanish_tol"] = job.classifier.vanish_tol;
    c["trans_tol"] = job.classifier.trans_tol;
    c["cert_z_margin"] = job.classifier.cert_z_margin;
    ojson t;
    t["tol"] = job.threshold.tol;
    t["rel_tol"] = job.threshold.rel_tol;
    t["budget"] = job.threshold.budget;
    t["extensions"] = job.threshold.extensions;
    ojson sw;
    sw["mu"] = job.sweep.mu;
    sw["sigma"] = job.sweep.sigma;
    sw["h0"] = job.sweep.h0;

    ojson out;
    out["command"] = to_string(job.command);
    out["nonlinearity"] = f;
    out["solver"] = s;
    out["classifier"] = c;
    out["threshold"] = t;
    out["sweep"] = sw;
    out["out_dir"] = job.out_dir;
    out["emit_plot_data"] = job.emit_plot_data;
    out["stop_on_certificate"] = job.stop_on_certificate;
    return out;
}

bool operator==(const JobConfig& a, const JobConfig& b) { return to_json(a) == to_json(b); }

std::vector<JobConfig> enumerate_sweep(const JobConfig& job) {
    const auto axis = [](const std::vector<double>& v, double base) { return v.empty() ? std::vector<double>{base} : v; };
    std::vector<JobConfig> jobs;
    for (double mu : axis(job.sweep.mu, job.solver.mu)) {
        for (double sigma : axis(job.sweep.sigma, job.solver.u0.sigma)) {
            for (double h0 : axis(job.sweep.h0, job.solver.h0)) {
                JobConfig j = job;
                j.command = Command::Simulate;
                j.sweep = {};
                j.solver.mu = mu;
                j.solver.u0.sigma = sigma;
                j.solver.h0 = h0;
                jobs.push_back(std::move(j));
            }
        }
    }
    return jobs;
}

// Writers ----------------------------------------------------------------

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

ojson finite_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

}  // namespace

void write_json(const fs::path& path, const ojson& value) {
    auto out = open_out(path);
    out << value.dump(2) << '\n';
}

void write_fronts_csv(const fs::path& path, const Run& run) {
    auto out = open_out(path);
    out << "t,g,h,gprime,hprime\n";
    for (const auto& f : run.fronts) {
        out << num(f.t) << ',' << num(f.g) << ',' << num(f.h) << ',' << num(f.gp) << ',' << num(f.hp) << '\n';
    }
}

void write_snapshots_csv(const fs::path& path, const Run& run) {
    auto out = open_out(path);
    out << "t,j,y,x,U\n";
    for (const auto& s : run.snapshots) {
        for (std::size_t j = 0; j < s.U.size(); ++j) {
            out << num(s.t) << ',' << j << ',' << num(s.y_at(j)) << ',' << num(s.x_at(j)) << ',' << num(s.U[j]) << '\n';
        }
    }
}

void write_front_speed_csv(const fs::path& path, const Run& run) {
    auto out = open_out(path);
    out << "t,h_over_t,minus_g_over_t\n";
    for (const auto& f : run.fronts) {
        if (f.t > 0.0) out << num(f.t) << ',' << num(f.h / f.t) << ',' << num(-f.g / f.t) << '\n';
    }
}

void write_profile_csv(const fs::path& path, const std::vector<ProfilePoint>& profile, const std::string& x_name,
                       const std::string& v_name) {
    auto out = open_out(path);
    out << x_name << ',' << v_name << '\n';
    for (const auto& p : profile) out << num(p.x) << ',' << num(p.value) << '\n';
}

ojson report_json(const Run& run, double runtime_s) {
    ojson r;
    char hash[24];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(run.config_hash));
    r["config_hash"] = hash;
    r["termination"] = to_string(run.termination);
    r["steps"] = run.steps;
    r["t_end"] = run.snapshots.empty() ? 0.0 : run.snapshots.back().t;
    r["warnings"] = run.warnings;
    ojson checks = ojson::object();
    for (const auto& [name, st] : run.checks) {
        checks[name] = {{"evaluations", st.evaluations}, {"violations", st.violations}, {"worst", st.worst}};
    }
    r["checks"] = checks;
    r["runtime_s"] = runtime_s;
    return r;
}

ojson verdict_json(const Verdict& v, const std::optional<SpeedEstimate>& speed) {
    ojson j;
    j["outcome"] = to_string(v.outcome);
    j["certificate"] = to_string(v.certificate);
    j["t"] = v.t;
    ojson ev = ojson::object();
    for (const auto& [k, x] : v.evidence) ev[k] = finite_or_null(x);
    j["evidence"] = ev;
    if (speed) {
        j["speed"] = {{"c_hat", speed->c_hat},
                      {"slope_h", speed->slope_h},
                      {"slope_minus_g", speed->slope_g},
                      {"asymmetry", speed->asymmetry},
                      {"decay_slope", speed->decay_slope},
                      {"decay_residual", speed->decay_residual}};
    }
    return j;
}

ojson threshold_json(const ThresholdResult& r) {
    ojson j;
    j["sigma_lo"] = r.sigma_lo;
    j["sigma_hi"] = finite_or_null(r.sigma_hi);
    j["width"] = finite_or_null(r.width);
    j["sigma_lo_certified"] = r.sigma_lo_certified;
    j["budget_hit"] = r.budget_hit;
    j["unresolved"] = r.unresolved;
    if (!r.note.empty()) j["note"] = r.note;
    ojson evals = ojson::array();
    for (const auto& e : r.evals) {
        ojson item;
        item["sigma"] = e.sigma;
        item["verdict"] = verdict_json(e.verdict);
        evals.push_back(item);
    }
    j["evals"] = evals;
    return j;
}

ojson semiwave_json(const SemiWaveResult& r) {
    ojson j;
    j["c0"] = r.c0;
    j["c_star"] = r.c_star;
    j["mu"] = r.mu;
    j["omega_star"] = r.omega_star;
    return j;
}

// Jobs -----------------------------------------------------------------------

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

SimulateSummary run_simulate(const JobConfig& job, const fs::path& dir) {
    fs::create_directories(dir);
    const auto t0 = std::chrono::steady_clock::now();
    const Certifier cert(job.solver.nl, job.solver.mu, job.classifier);
    const Run r = run(job.solver, job.stop_on_certificate ? cert.monitor() : Monitor{});
    const double elapsed = seconds_since(t0);

    SimulateSummary sum;
    sum.verdict = classify_run(r, cert);
    sum.termination = r.termination;
    if (!r.snapshots.empty()) {
        sum.max_u = r.snapshots.back().max_u();
        sum.width = r.snapshots.back().h - r.snapshots.back().g;
    }
    if (sum.verdict.outcome == Outcome::Spreading) {
        try {
            sum.speed = speed_estimate(r, sum.verdict);
        } catch (const NotSpreading&) {
        }
    }
    write_json(dir / "config.json", to_json(job));
    write_fronts_csv(dir / "fronts.csv", r);
    write_snapshots_csv(dir / "snapshots.csv", r);
    write_json(dir / "report.json", report_json(r, elapsed));
    write_json(dir / "verdict.json", verdict_json(sum.verdict, sum.speed));
    if (job.emit_plot_data) write_front_speed_csv(dir / "front_speed.csv", r);
    return sum;
}

SemiWaveResult run_semiwave(const JobConfig& job, const fs::path& dir) {
    fs::create_directories(dir);
    const auto res = c_star(job.solver.nl, job.solver.mu);
    auto summary = semiwave_json(res);
    write_json(dir / "config.json", to_json(job));
    write_json(dir / "summary.json", summary);
    write_profile_csv(dir / "profile.csv", res.profile, "z", "q");
    if (job.emit_plot_data) {
        auto out = open_out(dir / "xi.csv");
        out << "c,xi\n";
        for (const auto& [c, xi] : res.xi_trace) out << num(c) << ',' << num(xi) << '\n';
    }
    return res;
}

ThresholdResult run_threshold(const JobConfig& job, const fs::path& dir) {
    fs::create_directories(dir);
    write_json(dir / "config.json", to_json(job));
    const auto res = sigma_star(job.solver, job.threshold, job.classifier);
    write_json(dir / "threshold.json", threshold_json(res));
    return res;
}

std::size_t run_sweep(const JobConfig& job, const fs::path& dir, unsigned workers) {
    fs::create_directories(dir);
    write_json(dir / "config.json", to_json(job));
    const auto jobs = enumerate_sweep(job);
    std::vector<std::optional<SimulateSummary>> results(jobs.size());
    std::vector<std::string> errors(jobs.size());
    std::atomic<std::size_t> next{0};

    const auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            char name[32];
            std::snprintf(name, sizeof name, "run_%04zu", i);
            try {
                results[i] = run_simulate(jobs[i], dir / name);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::size_t failures = 0;
    auto out = open_out(dir / "summary.csv");
    out << "run,mu,sigma,h0,verdict,certificate,c_hat,max_u,width,termination,error\n";
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& sc = jobs[i].solver;
        out << i << ',' << num(sc.mu) << ',' << num(sc.u0.sigma) << ',' << num(sc.h0) << ',';
        if (const auto& r = results[i]) {
            out << to_string(r->verdict.outcome) << ',' << to_string(r->verdict.certificate) << ','
                << (r->speed ? num(r->speed->c_hat) : "") << ',' << num(r->max_u) << ',' << num(r->width) << ','
                << to_string(r->termination) << ",\n";
            if (r->termination == Termination::Blowup) ++failures;
        } else {
            std::string msg = errors[i];
            std::replace(msg.begin(), msg.end(), ',', ';');
            out << ",,,,,error," << msg << '\n';
            ++failures;
        }
    }
    return failures;
}

int execute(const JobConfig& job, unsigned workers) {
    const fs::path dir = job.out_dir;
    try {
        switch (job.command) {
            case Command::Simulate: {
                const auto s = run_simulate(job, dir);
                std::cout << "verdict: " << to_string(s.verdict.outcome) << " (" << to_string(s.verdict.certificate)
                          << ", t=" << s.verdict.t << ")\n";
                if (s.speed) std::cout << "c_hat: " << s.speed->c_hat << '\n';
                if (s.termination == Termination::Blowup) {
                    std::cerr << "error: run blew up\n";
                    return exit_code::numerical_failure;
                }
                break;
            }
            case Command::Semiwave: {
                const auto r = run_semiwave(job, dir);
                std::cout << "c0: " << r.c0 << "\nc_star: " << r.c_star << "\nomega_star: " << r.omega_star << '\n';
                break;
            }
            case Command::Threshold: {
                const auto r = run_threshold(job, dir);
                std::cout << "sigma in [" << r.sigma_lo << ", " << r.sigma_hi << "] after " << r.evals.size() << " runs\n";
                if (!r.note.empty()) std::cout << "note: " << r.note << '\n';
                break;
            }
            case Command::Sweep: {
                const auto failed = run_sweep(job, dir, workers);
                std::cout << "sweep: " << enumerate_sweep(job).size() << " runs, " << failed << " failed\n";
                if (failed > 0) return exit_code::numerical_failure;
                break;
            }
        }
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_code::config_error;
    } catch (const ValidationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_code::config_error;
    } catch (const KindError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_code::config_error;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_code::numerical_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code::numerical_failure;
    }
    return exit_code::ok;
}

}  // namespace stefan_front::io

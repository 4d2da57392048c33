// tailrisk: command-line front end.

#include "cli_support.hpp"

#include "tailrisk/argarch.hpp"
#include "tailrisk/backtest.hpp"
#include "tailrisk/decluster.hpp"
#include "tailrisk/errors.hpp"
#include "tailrisk/extremal.hpp"
#include "tailrisk/simulate.hpp"
#include "tailrisk/taildep.hpp"
#include "tailrisk/tailest.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>

using namespace tailrisk;
using namespace tailrisk::cli;

namespace {

Json params_json(const argarch::ArGarchParams& p) {
    return {{"mu", p.mu}, {"phi", p.phi}, {"omega", p.omega}, {"a", p.a}, {"b", p.b_coef}};
}

Json ci_json(const std::optional<tailest::ConfidenceInterval>& ci) {
    if (!ci) return nullptr;
    return {{"lower", ci->lower}, {"upper", ci->upper}, {"level", ci->level}};
}

std::vector<backtest::QuantileMethod> parse_methods(const std::vector<std::string>& names) {
    std::vector<backtest::QuantileMethod> out;
    for (const auto& n : names) out.push_back(backtest::quantile_method_from_string(n));
    return out;
}

/// Standardized residuals of the full-sample QMLE fit, with their dates.
ingest::ReturnSeries residual_series(const ingest::ReturnSeries& r, argarch::FilteredSeries* fit_out = nullptr) {
    auto fit = argarch::fit_qmle(r.values);
    ingest::ReturnSeries z;
    z.symbol = r.symbol + "_resid";
    z.dates.assign(r.dates.begin() + 1, r.dates.end());
    z.values = fit.resid;
    if (fit_out) *fit_out = std::move(fit);
    return z;
}

// ---------------------------------------------------------------------------

struct TailOptions {
    std::string method = "hill";
    std::size_t k_alpha = 250;
    std::size_t k = 250;
    double p = 0.99;
    double rho = -1.0;
    std::string k_grid;
    bool residuals = false;
    bool ci = false;
    BootOptions boot;
};

void cmd_tail(Run& run, const GlobalOptions& g, const TailOptions& o) {
    auto r = load_series(g, g.input);
    run.add_input(g.input);
    if (o.residuals) r = residual_series(r);
    const auto method = tailest::method_from_string(o.method);
    const tailest::OrderedSample s(r.values);
    auto fit = tailest::fit_tail(s, method, o.k_alpha, o.rho);
    const auto spec = o.boot.spec(g.seed);
    auto stat_at = [&](std::size_t k) {
        return [=](std::span<const double> v) {
            return tailest::fit_tail(tailest::OrderedSample::upper_tail(v, k + 1), method, k, o.rho).alpha;
        };
    };
    if (o.ci) {
        const auto pi = bootstrap::percentile_ci(r.values, stat_at(o.k_alpha), spec, g.threads);
        fit.ci = tailest::ConfidenceInterval{pi.lower, pi.upper, spec.level};
        run.note_seed("bootstrap", spec.seed);
    }
    const auto q = tailest::weissman_quantile(s, o.p, o.k, fit);
    Json report = {{"input", {{"symbol", r.symbol}, {"n", r.size()}}},
                   {"method", tailest::to_string(method)},
                   {"k_alpha", fit.k_alpha},
                   {"rho", o.rho},
                   {"alpha", fit.alpha},
                   {"gamma", fit.gamma},
                   {"alpha_ci", ci_json(fit.ci)},
                   {"p", o.p},
                   {"k", o.k},
                   {"quantile", q.value},
                   {"empirical_quantile", tailest::empirical_quantile(s, o.p)}};
    if (method == tailest::Method::qq_regression) {
        std::ostringstream qq;
        qq << "u,v\n";
        for (const auto& pt : tailest::pareto_qq_points(r.values, o.k_alpha)) qq << num(pt.u) << ',' << num(pt.v) << '\n';
        run.write("tail_qq.csv", qq.str());
    }
    if (!o.k_grid.empty()) {
        const auto grid = parse_grid(o.k_grid);
        std::ostringstream csv;
        csv << "k,alpha,quantile,lower,upper\n";
        for (const auto k : grid) {
            try {
                const auto f = tailest::fit_tail(s, method, k, o.rho);
                const double qv = tailest::weissman_quantile(s, o.p, std::min(k, s.n() - 1), f).value;
                std::string lo = "", hi = "";
                if (o.ci) {
                    const auto pi = bootstrap::percentile_ci(r.values, stat_at(k), spec, g.threads);
                    lo = num(pi.lower);
                    hi = num(pi.upper);
                }
                csv << k << ',' << num(f.alpha) << ',' << num(qv) << ',' << lo << ',' << hi << '\n';
            } catch (const DomainError&) {
                csv << k << ",,,,\n";
            }
        }
        run.write("tail_trace.csv", csv.str());
    }
    run.write_json("tail.json", report);
}

// ---------------------------------------------------------------------------

struct ThetaOptions {
    std::size_t block_size = 500;
    std::string block_grid;
    std::string ci = "lik";
    double level = 0.95;
    bool residuals = false;
    BootOptions boot;
};

void cmd_theta(Run& run, const GlobalOptions& g, const ThetaOptions& o) {
    auto r = load_series(g, g.input);
    run.add_input(g.input);
    if (o.residuals) r = residual_series(r);
    const auto method = o.ci == "boot" ? extremal::CiMethod::block_bootstrap : extremal::CiMethod::exp_likelihood;
    auto spec = o.boot.spec(g.seed);
    spec.level = o.level;
    if (method == extremal::CiMethod::block_bootstrap) run.note_seed("bootstrap", spec.seed);
    auto estimate = [&](std::size_t b) {
        auto fit = extremal::extremal_index_sliding(r.values, b);
        fit.ci = extremal::theta_ci(fit, r.values, o.level, method, spec, g.threads);
        return fit;
    };
    const auto fit = estimate(o.block_size);
    run.write_json("theta.json", {{"input", {{"symbol", r.symbol}, {"n", r.size()}}},
                                  {"b", fit.block_size},
                                  {"theta", fit.theta},
                                  {"theta_raw", fit.theta_raw},
                                  {"ci_method", o.ci},
                                  {"ci", ci_json(fit.ci)}});
    if (!o.block_grid.empty()) {
        std::ostringstream csv;
        csv << "b,theta,lower,upper\n";
        for (const auto b : parse_grid(o.block_grid)) {
            const auto f = estimate(b);
            csv << b << ',' << num(f.theta) << ',' << num(f.ci->lower) << ',' << num(f.ci->upper) << '\n';
        }
        run.write("theta_trace.csv", csv.str());
    }
}

// ---------------------------------------------------------------------------

struct DeclusterOptions {
    std::string method = "gap";
    std::string weekday = "Mon";
    std::size_t gap_days = 2;
};

void cmd_decluster(Run& run, const GlobalOptions& g, const DeclusterOptions& o) {
    const auto r = load_series(g, g.input);
    run.add_input(g.input);
    ingest::ReturnSeries out;
    Json params;
    if (o.method == "weekday") {
        const auto wd = decluster::weekday_from_string(o.weekday);
        out = decluster::weekday_subsample(r, wd);
        params = {{"weekday", o.weekday}};
    } else {
        out = decluster::rank_gap_decluster(r, o.gap_days);
        params = {{"gap_days", o.gap_days}};
    }
    std::ostringstream csv;
    csv << "date,value\n";
    for (std::size_t i = 0; i < out.size(); ++i) csv << ingest::format_date(out.dates[i]) << ',' << num(out.values[i]) << '\n';
    run.write("decluster.csv", csv.str());
    run.write_json("decluster.json", {{"input", {{"symbol", r.symbol}, {"n", r.size()}}},
                                      {"method", o.method},
                                      {"parameters", params},
                                      {"kept", out.size()},
                                      {"removed", r.size() - out.size()}});
}

// ---------------------------------------------------------------------------

void cmd_garch(Run& run, const GlobalOptions& g) {
    const auto r = load_series(g, g.input);
    run.add_input(g.input);
    argarch::FilteredSeries f;
    (void)residual_series(r, &f);
    Json se = nullptr;
    if (f.std_errors) {
        const auto& s = *f.std_errors;
        se = {{"mu", s[0]}, {"phi", s[1]}, {"omega", s[2]}, {"a", s[3]}, {"b", s[4]}};
    }
    const auto fc = argarch::forecast_next(f, r.values.back());
    run.write_json("garch.json", {{"input", {{"symbol", r.symbol}, {"n", r.size()}}},
                                  {"params", params_json(f.params)},
                                  {"std_errors", se},
                                  {"loglik", f.loglik},
                                  {"near_igarch", f.near_igarch},
                                  {"evaluations", f.evaluations},
                                  {"forecast", {{"mu_next", fc.mu_next}, {"sigma_next", fc.sigma_next}}}});
    std::ostringstream csv;
    csv << "date,value,sigma,resid\n";
    for (std::size_t t = 1; t < r.size(); ++t) {
        csv << ingest::format_date(r.dates[t]) << ',' << num(r.values[t]) << ',' << num(f.sigma[t - 1]) << ','
            << num(f.resid[t - 1]) << '\n';
    }
    run.write("garch_filtered.csv", csv.str());
}

// ---------------------------------------------------------------------------

struct BacktestOptions {
    std::size_t window = 2000;
    std::size_t step = 250;
    std::vector<std::size_t> test_lens{250, 2000};
    double p = 0.99;
    std::vector<std::string> methods{"hill", "corrected", "empirical"};
    double level = 0.05;
    std::size_t k = 50;
    std::size_t k_alpha_hill = 50;
    std::size_t k_alpha_corrected = 200;
    std::size_t chunk = 250;
};

backtest::QuantileConfig quantile_config(const BacktestOptions& o) {
    backtest::QuantileConfig cfg;
    cfg.p = o.p;
    cfg.k = o.k;
    cfg.k_alpha_hill = o.k_alpha_hill;
    cfg.k_alpha_corrected = o.k_alpha_corrected;
    return cfg;
}

Json rejection_json(const std::vector<backtest::DailyForecasts>& daily, const BacktestOptions& o) {
    Json out = Json::array();
    for (const auto len : o.test_lens) {
        for (const auto& d : daily) {
            if (d.exceed.size() < len) continue;
            const auto s = backtest::aggregate_test_windows(d.exceed, len, o.level);
            out.push_back({{"test_len", len},
                           {"method", backtest::to_string(d.method)},
                           {"windows", s.windows},
                           {"mean_count", s.mean_count},
                           {"max_count", s.max_count},
                           {"uc_rejection", s.uc_rejection},
                           {"cc_rejection", s.cc_rejection}});
        }
    }
    return out;
}

void cmd_backtest_uncond(Run& run, const GlobalOptions& g, const BacktestOptions& o) {
    const auto r = load_series(g, g.input);
    run.add_input(g.input);
    const auto methods = parse_methods(o.methods);
    const auto cfg = quantile_config(o);
    const auto res = backtest::roll_unconditional(r.values, o.window, o.step, o.test_lens, methods, cfg, g.threads);
    std::ostringstream csv;
    csv << "window_start,method,forecast";
    for (const auto len : o.test_lens) csv << ",count_" << len;
    csv << '\n';
    for (const auto& w : res.windows) {
        csv << ingest::format_date(r.dates[w.start]) << ',' << backtest::to_string(w.method) << ',' << num(w.forecast);
        for (const auto& c : w.counts) {
            csv << ',';
            if (c) csv << *c;
        }
        csv << '\n';
    }
    run.write("backtest_uncond_windows.csv", csv.str());
    Json summary = Json::array();
    for (const auto& s : res.summary) {
        summary.push_back({{"test_len", s.test_len},
                           {"method", backtest::to_string(s.method)},
                           {"windows", s.windows},
                           {"mean_count", s.mean_count},
                           {"max_count", s.max_count}});
    }
    // Rejection fractions use forecasts re-estimated every day on the trailing window.
    const auto daily = backtest::daily_unconditional(r.values, o.window, methods, cfg, g.threads);
    run.write_json("backtest_uncond.json", {{"input", {{"symbol", r.symbol}, {"n", r.size()}}},
                                            {"window", o.window},
                                            {"step", o.step},
                                            {"p", o.p},
                                            {"level", o.level},
                                            {"windows", res.windows.size() / methods.size()},
                                            {"summary", summary},
                                            {"rejections_daily", rejection_json(daily, o)}});
}

void cmd_backtest_cond(Run& run, const GlobalOptions& g, const BacktestOptions& o) {
    const auto r = load_series(g, g.input);
    run.add_input(g.input);
    const auto methods = parse_methods(o.methods);
    backtest::ConditionalOptions opt;
    opt.chunk = o.chunk;
    const auto res = backtest::roll_conditional(r.values, o.window, methods, quantile_config(o), g.threads, opt);
    std::ostringstream csv;
    csv << "date,realized,mu,sigma";
    for (const auto& m : res.methods) csv << ",forecast_" << backtest::to_string(m.method) << ",exceed_"
                                          << backtest::to_string(m.method);
    csv << ",fit_failed\n";
    std::vector<std::uint8_t> failed(res.mu_next.size(), 0);
    for (const auto d : res.failed_days) failed[d] = 1;
    for (std::size_t d = 0; d < res.mu_next.size(); ++d) {
        const auto t = res.first + d;
        csv << ingest::format_date(r.dates[t]) << ',' << num(r.values[t]) << ',' << num(res.mu_next[d]) << ','
            << num(res.sigma_next[d]);
        for (const auto& m : res.methods) csv << ',' << num(m.forecasts[d]) << ',' << int(m.exceed.indicators[d]);
        csv << ',' << int(failed[d]) << '\n';
    }
    run.write("backtest_cond_daily.csv", csv.str());
    Json failed_dates = Json::array();
    for (const auto d : res.failed_days) failed_dates.push_back(ingest::format_date(r.dates[res.first + d]));
    run.write_json("backtest_cond.json", {{"input", {{"symbol", r.symbol}, {"n", r.size()}}},
                                          {"window", o.window},
                                          {"p", o.p},
                                          {"level", o.level},
                                          {"days", res.mu_next.size()},
                                          {"failed_fits", failed_dates},
                                          {"rejections", rejection_json(res.methods, o)}});
}

// ---------------------------------------------------------------------------

struct ChiOptions {
    std::vector<std::string> pair;
    std::size_t k = 500;
    std::string k_grid;
    bool residuals = false;
    bool ci = false;
    BootOptions boot;
};

void cmd_chi(Run& run, const GlobalOptions& g, const ChiOptions& o) {
    if (o.pair.size() != 2) throw UsageError("--pair needs two files");
    auto a = load_series(g, o.pair[0]);
    auto b = load_series(g, o.pair[1]);
    run.add_input(o.pair[0]);
    run.add_input(o.pair[1]);
    auto p = ingest::align_pairs(a, b);
    if (o.residuals) {
        p.a = argarch::fit_qmle(p.a).resid;
        p.b = argarch::fit_qmle(p.b).resid;
        p.dates.erase(p.dates.begin());
    }
    const auto grid = o.k_grid.empty() ? std::vector<std::size_t>{o.k} : parse_grid(o.k_grid);
    std::optional<bootstrap::BootstrapSpec> spec;
    if (o.ci) {
        spec = o.boot.spec(g.seed);
        run.note_seed("bootstrap", spec->seed);
    }
    const auto fits = taildep::chi_trace(p.a, p.b, grid, spec, g.threads);
    std::ostringstream csv;
    csv << "k,chi,lower,upper\n";
    Json list = Json::array();
    for (const auto& f : fits) {
        csv << f.k << ',' << num(f.chi) << ',' << (f.ci ? num(f.ci->lower) : "") << ','
            << (f.ci ? num(f.ci->upper) : "") << '\n';
        list.push_back({{"k", f.k}, {"chi", f.chi}, {"ci", ci_json(f.ci)}});
    }
    run.write("chi_trace.csv", csv.str());
    run.write_json("chi.json", {{"inputs", {a.symbol, b.symbol}},
                                {"n", p.size()},
                                {"residuals", o.residuals},
                                {"estimates", list}});
}

// ---------------------------------------------------------------------------

struct SimOptions {
    std::string model = "pareto";
    double alpha = 2.0;
    double mu = -0.05, phi = 0.066, omega = 0.011, a = 0.099, b = 0.894;
    std::string innovation = "gaussian";
    double df = 5.0;
    std::size_t m = 2;
    std::string base = "frechet";
    std::size_t n = 1000;
    std::string out = "sim.csv";
};

void cmd_sim(Run& run, const GlobalOptions& g, const SimOptions& o) {
    std::vector<double> x;
    Json params;
    if (o.model == "argarch") {
        const argarch::ArGarchParams p{o.mu, o.phi, o.omega, o.a, o.b};
        const auto innov =
            o.innovation == "t" ? simulate::Innovation::student_t(o.df) : simulate::Innovation::gaussian();
        x = simulate::sim_argarch(p, o.n, innov, g.seed);
        params = params_json(p);
        params["innovation"] = o.innovation;
        if (o.innovation == "t") params["df"] = o.df;
    } else if (o.model == "pareto") {
        x = simulate::sim_pareto(o.alpha, o.n, g.seed);
        params = {{"alpha", o.alpha}};
    } else if (o.model == "frechet") {
        x = simulate::sim_frechet(o.alpha, o.n, g.seed);
        params = {{"alpha", o.alpha}};
    } else {
        const double alpha = o.alpha;
        const simulate::Sampler base = o.base == "pareto"
                                           ? simulate::Sampler([alpha](std::size_t c, std::uint64_t s) {
                                                 return simulate::sim_pareto(alpha, c, s);
                                             })
                                           : simulate::Sampler([alpha](std::size_t c, std::uint64_t s) {
                                                 return simulate::sim_frechet(alpha, c, s);
                                             });
        x = simulate::sim_duplicated(base, o.m, o.n, g.seed);
        params = {{"base", o.base}, {"alpha", o.alpha}, {"m", o.m}};
    }
    std::ostringstream csv;
    csv << "t,value\n";
    for (std::size_t i = 0; i < x.size(); ++i) csv << i + 1 << ',' << num(x[i]) << '\n';
    run.write(o.out, csv.str());
    run.write_json("sim.json", {{"model", o.model}, {"parameters", params}, {"n", o.n}, {"seed", g.seed}, {"data", o.out}});
}

// ---------------------------------------------------------------------------

void cmd_acf(Run& run, const GlobalOptions& g, std::size_t max_lag) {
    const auto r = load_series(g, g.input);
    run.add_input(g.input);
    std::vector<double> absx(r.size()), sq(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        absx[i] = std::abs(r.values[i]);
        sq[i] = r.values[i] * r.values[i];
    }
    const auto raw = ingest::acf(r.values, max_lag);
    const auto ab = ingest::acf(absx, max_lag);
    const auto s2 = ingest::acf(sq, max_lag);
    std::ostringstream csv;
    csv << "lag,acf,acf_abs,acf_squared\n";
    for (std::size_t h = 0; h < raw.size(); ++h) {
        csv << h + 1 << ',' << num(raw[h]) << ',' << num(ab[h]) << ',' << num(s2[h]) << '\n';
    }
    run.write("acf.csv", csv.str());
    run.write_json("acf.json", {{"input", {{"symbol", r.symbol}, {"n", r.size()}}},
                                {"max_lag", max_lag},
                                {"band_95", 1.96 / std::sqrt(static_cast<double>(r.size()))},
                                {"acf", raw},
                                {"acf_abs", ab},
                                {"acf_squared", s2}});
}

void add_backtest_options(CLI::App* sub, BacktestOptions& o, bool rolling_step) {
    sub->add_option("--window", o.window, "estimation window length")->capture_default_str();
    if (rolling_step) sub->add_option("--step", o.step, "window shift between estimates")->capture_default_str();
    sub->add_option("--test-len", o.test_lens, "test span lengths")->delimiter(',')->capture_default_str();
    sub->add_option("--p", o.p, "quantile level")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    sub->add_option("--methods", o.methods, "hill, corrected, empirical")->delimiter(',')->capture_default_str();
    sub->add_option("--level", o.level, "test significance level")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    sub->add_option("--k", o.k, "Weissman threshold count")->capture_default_str();
    sub->add_option("--k-alpha-hill", o.k_alpha_hill, "Hill k_alpha")->capture_default_str();
    sub->add_option("--k-alpha-corrected", o.k_alpha_corrected, "corrected Hill k_alpha")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extreme-value tail risk toolkit", "tailrisk"};
    app.require_subcommand(1);
    GlobalOptions g;
    add_global_options(app, g);
    app.fallthrough();

    TailOptions tail;
    auto* tail_cmd = app.add_subcommand("tail", "tail index and Weissman quantile");
    tail_cmd->add_option("--method", tail.method, "hill | corrected | qq")
        ->check(CLI::IsMember({"hill", "corrected", "qq"}))
        ->capture_default_str();
    tail_cmd->add_option("--k-alpha", tail.k_alpha, "order statistics used for alpha")->capture_default_str();
    tail_cmd->add_option("--k", tail.k, "Weissman threshold count")->capture_default_str();
    tail_cmd->add_option("--p", tail.p, "quantile level")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    tail_cmd->add_option("--rho", tail.rho, "second-order parameter")->capture_default_str();
    tail_cmd->add_option("--k-grid", tail.k_grid, "k_alpha trace grid lo:hi:step");
    tail_cmd->add_flag("--residuals", tail.residuals, "estimate on AR-GARCH residuals");
    tail_cmd->add_flag("--ci", tail.ci, "bootstrap confidence interval for alpha");
    add_boot_options(*tail_cmd, tail.boot);

    ThetaOptions theta;
    auto* theta_cmd = app.add_subcommand("theta", "extremal index (sliding blocks)");
    auto* bs = theta_cmd->add_option("--block-size", theta.block_size, "block size b")->capture_default_str();
    theta_cmd->add_option("--block-grid", theta.block_grid, "trace grid lo:hi:step");
    theta_cmd->add_option("--ci", theta.ci, "lik | boot")->check(CLI::IsMember({"lik", "boot"}))->capture_default_str();
    theta_cmd->add_option("--level", theta.level, "confidence level")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    theta_cmd->add_flag("--residuals", theta.residuals, "estimate on AR-GARCH residuals");
    add_boot_options(*theta_cmd, theta.boot);
    (void)bs;

    DeclusterOptions dec;
    auto* dec_cmd = app.add_subcommand("decluster", "weekday or rank-gap declustering");
    dec_cmd->add_option("--method", dec.method, "weekday | gap")
        ->check(CLI::IsMember({"weekday", "gap"}))
        ->capture_default_str();
    dec_cmd->add_option("--weekday", dec.weekday, "Mon..Fri")->capture_default_str();
    dec_cmd->add_option("--gap-days", dec.gap_days, "trading-day gap")->check(CLI::PositiveNumber)->capture_default_str();

    auto* garch_cmd = app.add_subcommand("garch", "AR(1)-GARCH(1,1) QMLE fit and filtering");

    BacktestOptions bu;
    auto* bu_cmd = app.add_subcommand("backtest-uncond", "rolling unconditional quantile backtest");
    add_backtest_options(bu_cmd, bu, true);

    BacktestOptions bc;
    auto* bc_cmd = app.add_subcommand("backtest-cond", "daily conditional quantile backtest");
    add_backtest_options(bc_cmd, bc, false);
    bc_cmd->add_option("--chunk", bc.chunk, "days per warm-start chunk")->check(CLI::PositiveNumber)->capture_default_str();

    ChiOptions chi;
    auto* chi_cmd = app.add_subcommand("chi", "tail dependence coefficient");
    chi_cmd->add_option("--pair", chi.pair, "two input files")->expected(2)->required();
    chi_cmd->add_option("--k", chi.k, "number of top ranks")->capture_default_str();
    chi_cmd->add_option("--k-grid", chi.k_grid, "trace grid lo:hi:step");
    chi_cmd->add_flag("--residuals", chi.residuals, "filter each margin by AR-GARCH first");
    chi_cmd->add_flag("--ci", chi.ci, "paired bootstrap confidence intervals");
    add_boot_options(*chi_cmd, chi.boot);

    SimOptions sim;
    auto* sim_cmd = app.add_subcommand("sim", "simulate a series");
    sim_cmd->add_option("--model", sim.model, "argarch | pareto | frechet | dup")
        ->check(CLI::IsMember({"argarch", "pareto", "frechet", "dup"}))
        ->capture_default_str();
    sim_cmd->add_option("--alpha", sim.alpha, "tail index")->capture_default_str();
    sim_cmd->add_option("--mu", sim.mu)->capture_default_str();
    sim_cmd->add_option("--phi", sim.phi)->capture_default_str();
    sim_cmd->add_option("--omega", sim.omega)->capture_default_str();
    sim_cmd->add_option("--a", sim.a, "ARCH coefficient")->capture_default_str();
    sim_cmd->add_option("--b", sim.b, "GARCH coefficient")->capture_default_str();
    sim_cmd->add_option("--innovation", sim.innovation, "gaussian | t")
        ->check(CLI::IsMember({"gaussian", "t"}))
        ->capture_default_str();
    sim_cmd->add_option("--df", sim.df, "Student-t degrees of freedom")->capture_default_str();
    sim_cmd->add_option("--m", sim.m, "duplication factor")->check(CLI::PositiveNumber)->capture_default_str();
    sim_cmd->add_option("--base", sim.base, "pareto | frechet (dup base)")
        ->check(CLI::IsMember({"pareto", "frechet"}))
        ->capture_default_str();
    sim_cmd->add_option("--n", sim.n, "length")->check(CLI::PositiveNumber)->capture_default_str();
    sim_cmd->add_option("--out", sim.out, "output file name inside --out-dir")->capture_default_str();

    std::size_t max_lag = 50;
    auto* acf_cmd = app.add_subcommand("acf", "autocorrelations of returns, |returns| and squares");
    acf_cmd->add_option("--max-lag", max_lag, "largest lag")->check(CLI::PositiveNumber)->capture_default_str();

    if (argc < 2) {
        std::cerr << app.help();
        return 2;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const CLI::App* sub = app.get_subcommands().front();
        Run run(app, *sub, g);
        if (sub == tail_cmd) cmd_tail(run, g, tail);
        else if (sub == theta_cmd) cmd_theta(run, g, theta);
        else if (sub == dec_cmd) cmd_decluster(run, g, dec);
        else if (sub == garch_cmd) cmd_garch(run, g);
        else if (sub == bu_cmd) cmd_backtest_uncond(run, g, bu);
        else if (sub == bc_cmd) cmd_backtest_cond(run, g, bc);
        else if (sub == chi_cmd) cmd_chi(run, g, chi);
        else if (sub == sim_cmd) cmd_sim(run, g, sim);
        else if (sub == acf_cmd) cmd_acf(run, g, max_lag);
        run.finish();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

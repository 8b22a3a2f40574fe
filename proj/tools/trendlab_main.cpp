// trendlab command-line surface: simulate cohorts, analyze series and
// event streams, and collate a summary against the reference values.
//
// Exit codes: 0 success, 1 runtime/data failure, 2 usage error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "trendlab/estimators.hpp"
#include "trendlab/ingest.hpp"
#include "trendlab/simulate.hpp"
#include "trendlab/trend_metrics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace trendlab;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr std::size_t kLongTrendIntervals = 12;  // four hours of 20-minute bins

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

// ---------------------------------------------------------------- simulate

struct SimulateConfig {
    ModelParams params;
    std::string out_dir;
};

void run_simulate(const SimulateConfig& cfg) {
    const fs::path out(cfg.out_dir);
    fs::create_directories(out);

    const CohortResult cohort = simulate_cohort(cfg.params);

    write_series(cohort.series, out / "series.csv");
    write_durations(cohort.sequences, out / "durations.csv");

    std::map<std::string, std::vector<IntervalIndex>> appearances;
    for (const auto& seq : cohort.sequences) {
        const std::uint64_t last = seq.start.value - 1 + seq.length;
        auto& v = appearances[seq.topic];
        v.reserve(last + 1);
        for (std::uint64_t i = 0; i <= last; ++i) v.push_back(IntervalIndex{i});
    }
    write_appearances(appearances, out / "appearances.csv");
    write_stream(cohort_to_stream(cohort.series, cfg.params.seed), out / "stream.ndjson");

    json manifest;
    manifest["command"] = "simulate";
    manifest["tool"] = "trendlab";
    manifest["version"] = kVersion;
    json p;
    p["topics"] = cfg.params.n_topics;
    p["intervals"] = cfg.params.n_intervals;
    p["n0"] = cfg.params.n0;
    p["gamma_c"] = cfg.params.gamma_scale;
    p["sigma2"] = cfg.params.sigma2;
    p["theta"] = cfg.params.theta;
    p["noise"] = cfg.params.noise_kind == NoiseKind::lognormal  ? "lognormal"
                 : cfg.params.noise_kind == NoiseKind::gamma    ? "gamma"
                                                                : "degenerate";
    p["seed"] = cfg.params.seed;
    if (cfg.params.constant_gamma_after) {
        p["constant_gamma_after"] = *cfg.params.constant_gamma_after;
    } else {
        p["constant_gamma_after"] = nullptr;
    }
    p["burn_in"] = kDefaultBurnIn;
    manifest["params"] = p;
    manifest["outputs"] = {{"series", "series.csv"},
                           {"durations", "durations.csv"},
                           {"appearances", "appearances.csv"},
                           {"stream", "stream.ndjson"}};
    open_out(out / "manifest.json") << manifest.dump(2) << '\n';

    std::cout << "simulated " << cfg.params.n_topics << " topics over "
              << cfg.params.n_intervals << " intervals -> " << out.string() << "\n";
}

// ----------------------------------------------------------------- analyze

struct AnalyzeConfig {
    std::string in_dir;
    std::string out_dir;
    std::optional<std::uint64_t> origin;  // binning origin for raw streams
    std::uint64_t fit_lo = 5;
    std::uint64_t fit_hi = 0;  // 0: 0.8 * horizon
    std::uint64_t t_i = 14;
    std::uint64_t t_j = 2;
    std::uint64_t min_duration = 0;
    std::uint64_t bins = 40;
    std::uint64_t truncation = 0;
    std::uint64_t min_topics = 50;
    std::uint64_t first_k = 100;
};

fs::path prepare_out(const AnalyzeConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    return cfg.out_dir;
}

// series.csv when present, otherwise the raw tweet stream binned into
// 20-minute intervals from --origin (default: earliest timestamp).
std::vector<TopicSeries> load_cohort(const AnalyzeConfig& cfg) {
    const fs::path series_path = fs::path(cfg.in_dir) / "series.csv";
    if (fs::exists(series_path)) return read_series(series_path);

    const ParsedStream stream = parse_stream(fs::path(cfg.in_dir) / "stream.ndjson");
    const std::uint64_t origin = cfg.origin.value_or(stream.summary.first_timestamp);
    BinnedStream binned = bin_intervals(stream.records, origin);
    std::vector<TopicSeries> cohort;
    cohort.reserve(binned.series.size());
    for (auto& [topic, series] : binned.series) cohort.push_back(std::move(series));
    return cohort;
}

void run_analyze_gamma(const AnalyzeConfig& cfg) {
    const auto cohort = load_cohort(cfg);
    const GammaSeries gs = measure_gamma(cohort);
    if (gs.t.empty()) throw InsufficientSampleError("no gamma estimates");

    const std::uint64_t hi_t =
        cfg.fit_hi > 0 ? cfg.fit_hi
                       : static_cast<std::uint64_t>(0.8 * static_cast<double>(gs.t.back()));
    std::size_t i0 = 0;
    while (i0 < gs.t.size() && gs.t[i0] < cfg.fit_lo) ++i0;
    std::size_t i1 = i0;
    while (i1 < gs.t.size() && gs.t[i1] <= hi_t) ++i1;

    std::vector<double> ts(gs.t.begin(), gs.t.end());
    const FitResult fit = fit_power_law(ts, gs.gamma, i0, i1);
    const double slope = fit.params.at("slope");
    const double intercept = fit.params.at("intercept");

    auto out = open_out(prepare_out(cfg) / "gamma.csv");
    out << "# slope=" << fmt(slope) << "\n";
    out << "# intercept=" << fmt(intercept) << "\n";
    out << "# r_squared=" << fmt(fit.r_squared) << "\n";
    out << "# fit_t_min=" << cfg.fit_lo << "\n";
    out << "# fit_t_max=" << hi_t << "\n";
    out << "t,gamma,fitted\n";
    for (std::size_t i = 0; i < gs.t.size(); ++i) {
        const double fitted = std::exp(intercept + slope * std::log(ts[i]));
        out << gs.t[i] << ',' << fmt(gs.gamma[i]) << ',' << fmt(fitted) << '\n';
    }
}

void run_analyze_ratios(const AnalyzeConfig& cfg) {
    const auto cohort = load_cohort(cfg);
    const RatioSample lnc =
        log_ratio_sample(cohort, IntervalIndex{cfg.t_i}, IntervalIndex{cfg.t_j});
    const NormalityMoments moments = moment_normality(lnc.values);
    const auto qq = qq_points(lnc.values);

    const double h = silverman_bandwidth(lnc.values);
    const auto [mn, mx] = std::minmax_element(lnc.values.begin(), lnc.values.end());
    const double lo = *mn - 3.0 * h;
    const double span = (*mx + 3.0 * h) - lo;
    std::vector<double> grid(101);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = lo + span * static_cast<double>(i) / 100.0;
    }
    const std::vector<double> density = gaussian_kde(lnc.values, grid);

    auto out = open_out(prepare_out(cfg) / "ratios.csv");
    out << "# t_i=" << cfg.t_i << "\n";
    out << "# t_j=" << cfg.t_j << "\n";
    out << "# topics=" << lnc.values.size() << "\n";
    out << "# excluded=" << lnc.excluded << "\n";
    out << "# skewness=" << fmt(moments.skewness) << "\n";
    out << "# excess_kurtosis=" << fmt(moments.excess_kurtosis) << "\n";
    out << "# kde_bandwidth=" << fmt(h) << "\n";
    out << "section,x,y\n";
    for (double v : lnc.values) out << "lnc," << fmt(v) << ",\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out << "kde," << fmt(grid[i]) << ',' << fmt(density[i]) << '\n';
    }
    for (const auto& point : qq) {
        out << "qq," << fmt(point.theoretical) << ',' << fmt(point.sample) << '\n';
    }
}

void run_analyze_curvature(const AnalyzeConfig& cfg) {
    const auto cohort = load_cohort(cfg);
    const CurvatureSeries all = normalized_second_derivative(cohort, cfg.min_duration);

    std::optional<CurvatureSeries> longs;
    try {
        longs = normalized_second_derivative(
            cohort, std::max<std::size_t>(cfg.min_duration, kLongTrendIntervals));
    } catch (const InsufficientSampleError&) {
        // no topic trended four hours; the column stays empty
    }

    double max_abs = 0.0;
    for (std::size_t i = 0; i < all.t.size(); ++i) {
        if (all.t[i] >= 5) max_abs = std::max(max_abs, std::fabs(all.mean[i]));
    }

    std::map<std::uint64_t, std::pair<double, std::size_t>> long_at;
    if (longs) {
        for (std::size_t i = 0; i < longs->t.size(); ++i) {
            long_at[longs->t[i]] = {longs->mean[i], longs->topics[i]};
        }
    }

    auto out = open_out(prepare_out(cfg) / "curvature.csv");
    out << "# min_duration=" << cfg.min_duration << "\n";
    out << "# long_filter_intervals=" << kLongTrendIntervals << "\n";
    out << "# max_abs_mean_t_ge_5=" << fmt(max_abs) << "\n";
    out << "t,mean_all,topics_all,mean_long,topics_long\n";
    for (std::size_t i = 0; i < all.t.size(); ++i) {
        out << all.t[i] << ',' << fmt(all.mean[i]) << ',' << all.topics[i] << ',';
        auto it = long_at.find(all.t[i]);
        if (it != long_at.end()) {
            out << fmt(it->second.first) << ',' << it->second.second;
        } else {
            out << ',';
        }
        out << '\n';
    }
}

void run_analyze_durations(const AnalyzeConfig& cfg) {
    const auto rows = read_durations(fs::path(cfg.in_dir) / "durations.csv");

    DurationSample sample;
    sample.truncation = cfg.truncation;
    std::size_t censored = 0;
    std::size_t below = 0;
    for (const auto& row : rows) {
        if (row.censored) {
            ++censored;
        } else if (row.duration < cfg.truncation) {
            ++below;
        } else {
            sample.durations.push_back(row.duration);
        }
    }

    const FitResult geo = fit_geometric(sample);
    const FitResult tail = fit_exponential_tail(sample, cfg.bins);
    const double p_hat = geo.params.at("p");
    double mean_shifted = 0.0;
    for (std::uint64_t d : sample.durations) {
        mean_shifted += static_cast<double>(d - cfg.truncation);
    }
    mean_shifted /= static_cast<double>(sample.durations.size());

    std::vector<std::size_t> histogram(cfg.bins, 0);
    for (std::uint64_t d : sample.durations) {
        const std::uint64_t k = d - cfg.truncation;
        if (k < cfg.bins) histogram[k] += 1;
    }

    auto out = open_out(prepare_out(cfg) / "durations.csv");
    out << "# n=" << sample.durations.size() << "\n";
    out << "# censored_excluded=" << censored << "\n";
    out << "# below_truncation=" << below << "\n";
    out << "# truncation=" << cfg.truncation << "\n";
    out << "# p_hat=" << fmt(p_hat) << "\n";
    out << "# mean_shifted_duration=" << fmt(mean_shifted) << "\n";
    out << "# expected_duration_at_p_hat=" << fmt(expected_duration(std::min(p_hat, 1.0 - 1e-12)))
        << "\n";
    out << "# tail_slope=" << fmt(tail.params.at("slope")) << "\n";
    out << "# tail_intercept=" << fmt(tail.params.at("intercept")) << "\n";
    out << "# tail_r_squared=" << fmt(tail.r_squared) << "\n";
    out << "duration,count,density\n";
    const double total = static_cast<double>(sample.durations.size());
    for (std::size_t k = 0; k < cfg.bins; ++k) {
        out << cfg.truncation + k << ',' << histogram[k] << ','
            << fmt(static_cast<double>(histogram[k]) / total) << '\n';
    }
}

void run_analyze_sequences(const AnalyzeConfig& cfg) {
    const auto appearances = load_trend_appearances(fs::path(cfg.in_dir) / "appearances.csv");
    const auto sequences = split_sequences(appearances);
    const SequenceDistributions dist = sequence_distributions(sequences);

    auto out = open_out(prepare_out(cfg) / "sequences.csv");
    out << "# n_topics=" << appearances.size() << "\n";
    out << "# n_sequences=" << sequences.size() << "\n";
    out << "# multi_sequence_fraction=" << fmt(dist.multi_sequence_fraction) << "\n";
    out << "section,value,count\n";
    for (const auto& [count, topics] : dist.sequences_per_topic) {
        out << "per_topic," << count << ',' << topics << '\n';
    }
    for (const auto& [length, n] : dist.lengths) {
        out << "length," << length << ',' << n << '\n';
    }
}

void run_analyze_metrics(const AnalyzeConfig& cfg) {
    const ParsedStream stream = parse_stream(fs::path(cfg.in_dir) / "stream.ndjson");
    const auto appearances = load_trend_appearances(fs::path(cfg.in_dir) / "appearances.csv");
    const auto metrics = compute_topic_metrics(stream.records, appearances);

    // author-side stats: credited retweets plus initiator counts
    std::map<std::string, AuthorStats> authors;
    std::map<std::string, std::vector<TweetRecord>> by_topic;
    for (const auto& r : stream.records) {
        auto& a = authors[r.author];
        a.author = r.author;
        a.tweet_count += 1;
        if (r.followers && !a.followers) a.followers = r.followers;
        if (r.tweet_rate && !a.tweet_rate) a.tweet_rate = r.tweet_rate;
        if (r.is_retweet && r.retweeted_author) {
            auto& credited = authors[*r.retweeted_author];
            credited.author = *r.retweeted_author;
            credited.retweets_received += 1;
        }
        by_topic[r.topic].push_back(r);
    }
    for (auto& [topic, tweets] : by_topic) {
        auto it = appearances.find(topic);
        if (it == appearances.end() || it->second.empty()) continue;
        std::stable_sort(tweets.begin(), tweets.end(),
                         [](const TweetRecord& a, const TweetRecord& b) { return a.time < b.time; });
        for (const auto& name : first_k_initiators(tweets, it->second.front(), cfg.first_k)) {
            authors[name].topics_initiated += 1;
        }
        std::map<std::string, bool> credited_here;
        for (const auto& r : tweets) {
            if (r.is_retweet && r.retweeted_author && !credited_here[*r.retweeted_author]) {
                credited_here[*r.retweeted_author] = true;
                authors[*r.retweeted_author].topics_retweeted_in += 1;
            }
        }
    }
    std::vector<AuthorStats> author_list;
    author_list.reserve(authors.size());
    for (auto& [name, a] : authors) {
        if (a.author.empty()) a.author = name;
        author_list.push_back(a);
    }

    const CorrelationReport corr = correlation_report(metrics, author_list);

    auto out = open_out(prepare_out(cfg) / "metrics.csv");
    out << "# topics=" << metrics.size() << "\n";
    out << "# authors=" << author_list.size() << "\n";
    for (const auto& [name, value] : corr.coefficients) {
        out << "# corr_" << name << '=' << fmt(value) << "\n";
    }
    for (const auto& note : corr.skipped) {
        out << "# skipped " << note << "\n";
    }
    out << "topic,total_tweets,unique_authors,active_ratio,retweet_count,domination_ratio,"
           "trend_duration,sequence_count\n";
    for (const auto& m : metrics) {
        out << csv_escape(m.topic) << ',' << m.total_tweets << ',' << m.unique_authors << ','
            << fmt(m.active_ratio) << ',' << m.retweet_count << ',';
        if (m.domination_ratio) out << fmt(*m.domination_ratio);
        out << ',' << m.trend_duration << ',' << m.sequence_count << '\n';
    }
}

// ------------------------------------------------------------------ report

std::map<std::string, std::string> read_headers(const fs::path& file) {
    std::ifstream in(file);
    std::map<std::string, std::string> headers;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) != 0) break;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        headers[line.substr(2, eq - 2)] = line.substr(eq + 1);
    }
    return headers;
}

int run_report(const std::string& in_dir) {
    const fs::path in(in_dir);
    const char* files[] = {"gamma.csv",     "ratios.csv",  "curvature.csv",
                           "durations.csv", "sequences.csv", "metrics.csv"};
    std::vector<std::string> missing;
    for (const char* f : files) {
        if (!fs::exists(in / f)) missing.push_back(f);
    }
    if (!missing.empty()) {
        std::cerr << "missing analysis sections:";
        for (const auto& m : missing) std::cerr << ' ' << m;
        std::cerr << "\n";
        return 1;
    }

    auto gamma = read_headers(in / "gamma.csv");
    auto ratios = read_headers(in / "ratios.csv");
    auto curvature = read_headers(in / "curvature.csv");
    auto durations = read_headers(in / "durations.csv");
    auto sequences = read_headers(in / "sequences.csv");
    auto metrics = read_headers(in / "metrics.csv");
    auto num = [](const std::map<std::string, std::string>& h, const std::string& key) {
        auto it = h.find(key);
        return it == h.end() ? std::nan("") : std::stod(it->second);
    };

    std::ostringstream s;
    s << "trendlab analysis summary\n";
    s << "=========================\n\n";

    {
        const double slope = num(gamma, "slope");
        const double r2 = num(gamma, "r_squared");
        const bool pass = slope >= -1.1 && slope <= -0.9 && r2 >= 0.95;
        s << "[gamma] novelty decay\n";
        s << "  fitted exponent = " << fmt6(slope)
          << "  (reference: exponent -1, fit R^2 = 0.98)\n";
        s << "  fit R^2 = " << fmt6(r2) << "\n";
        s << "  check: slope in [-1.1, -0.9] and R^2 >= 0.95 -> " << (pass ? "PASS" : "FAIL")
          << "\n\n";
    }
    {
        const double skew = num(ratios, "skewness");
        const double kurt = num(ratios, "excess_kurtosis");
        const bool pass = std::fabs(skew) < 0.15 && std::fabs(kurt) < 0.3;
        s << "[ratios] log-ratio normality (t_i=" << ratios["t_i"] << ", t_j=" << ratios["t_j"]
          << ")\n";
        s << "  skewness = " << fmt6(skew) << ", excess kurtosis = " << fmt6(kurt) << "\n";
        s << "  check: |skew| < 0.15 and |kurtosis| < 0.3 -> " << (pass ? "PASS" : "FAIL")
          << "\n\n";
    }
    {
        const double max_abs = num(curvature, "max_abs_mean_t_ge_5");
        const bool pass = max_abs <= 0.02;
        s << "[curvature] linear growth\n";
        s << "  max |mean normalized second difference| for t >= 5 = " << fmt6(max_abs) << "\n";
        s << "  check: within +/- 0.02 -> " << (pass ? "PASS" : "FAIL") << "\n\n";
    }
    {
        const double p_hat = num(durations, "p_hat");
        const double r2 = num(durations, "tail_r_squared");
        const bool pass = p_hat >= 0.10 && p_hat <= 0.14 && r2 >= 0.9;
        s << "[durations] geometric persistence\n";
        s << "  geometric p_hat = " << fmt6(p_hat) << "  (reference: geometric p = 0.12)\n";
        s << "  log-density tail fit R^2 = " << fmt6(r2) << "  (reference: R^2 = 0.9112)\n";
        s << "  check: p_hat in [0.10, 0.14] and tail R^2 >= 0.9 -> " << (pass ? "PASS" : "FAIL")
          << "\n\n";
    }
    {
        s << "[sequences] trend sequences\n";
        s << "  topics = " << sequences["n_topics"] << ", sequences = "
          << sequences["n_sequences"] << "\n";
        s << "  multi-sequence fraction = " << fmt6(num(sequences, "multi_sequence_fraction"))
          << "\n\n";
    }
    {
        s << "[metrics] correlations\n";
        bool any = false;
        for (const auto& [key, value] : metrics) {
            if (key.rfind("corr_", 0) != 0) continue;
            s << "  " << key.substr(5) << " = " << fmt6(std::stod(value)) << "\n";
            any = true;
        }
        if (!any) s << "  (no computable correlations)\n";
    }

    open_out(in / "summary.txt") << s.str();
    std::cout << s.str();
    return 0;
}

int run_app(int argc, char** argv) {
    CLI::App app{"trendlab: simulator and analysis toolkit for trending-topic dynamics"};
    app.require_subcommand(1);

    SimulateConfig sim;
    sim.params.n_topics = 1000;
    sim.params.n_intervals = 96;
    sim.params.n0 = 3.0;
    sim.params.gamma_scale = 1.0;
    sim.params.sigma2 = 0.25;
    sim.params.theta = 1.05;
    sim.params.seed = 42;
    std::string noise_name = "lognormal";

    CLI::App* sim_cmd = app.add_subcommand("simulate", "generate a synthetic cohort");
    sim_cmd->add_option("--topics", sim.params.n_topics, "number of topics");
    sim_cmd->add_option("--intervals", sim.params.n_intervals, "growth steps per topic");
    sim_cmd->add_option("--n0", sim.params.n0, "initial count N(0)");
    sim_cmd->add_option("--gamma-c", sim.params.gamma_scale, "c in gamma(t) = c/t");
    sim_cmd->add_option("--sigma2", sim.params.sigma2, "noise variance");
    sim_cmd->add_option("--theta", sim.params.theta,
                        "stop threshold on the growth rate N(t)/N(t-1); in survival "
                        "mode it is on the noise scale (theta = exp(F^-1(p)))");
    sim_cmd->add_option("--noise", noise_name, "noise family")
        ->check(CLI::IsMember({"lognormal", "gamma", "degenerate"}));
    sim_cmd->add_option("--seed", sim.params.seed, "RNG seed")->envname("TRENDLAB_SEED");
    sim_cmd->add_option("--constant-gamma-after", sim.params.constant_gamma_after,
                        "freeze gamma at c/t* after this step (survival mode)");
    sim_cmd->add_option("--out", sim.out_dir, "output directory")->required();

    AnalyzeConfig an;
    CLI::App* an_cmd = app.add_subcommand("analyze", "compute figure-ready tables");
    an_cmd->require_subcommand(1);
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--in", an.in_dir, "input directory (simulate output or ingested files)")
            ->required();
        sub->add_option("--out", an.out_dir, "output directory")->required();
    };
    auto add_origin = [&](CLI::App* sub) {
        sub->add_option("--origin", an.origin,
                        "binning origin in epoch seconds when reading a raw stream "
                        "(default: earliest timestamp)");
    };
    CLI::App* gamma_cmd = an_cmd->add_subcommand("gamma", "decay factor and power-law fit");
    add_common(gamma_cmd);
    add_origin(gamma_cmd);
    gamma_cmd->add_option("--fit-lo", an.fit_lo, "first step of the fit window");
    gamma_cmd->add_option("--fit-hi", an.fit_hi, "last step of the fit window (0: 0.8*horizon)");
    CLI::App* ratios_cmd = an_cmd->add_subcommand("ratios", "log-ratio distribution diagnostics");
    add_common(ratios_cmd);
    add_origin(ratios_cmd);
    ratios_cmd->add_option("--ti", an.t_i, "later interval t_i");
    ratios_cmd->add_option("--tj", an.t_j, "earlier interval t_j");
    CLI::App* curv_cmd = an_cmd->add_subcommand("curvature", "normalized second differences");
    add_common(curv_cmd);
    add_origin(curv_cmd);
    curv_cmd->add_option("--min-duration", an.min_duration, "minimum series length");
    CLI::App* dur_cmd = an_cmd->add_subcommand("durations", "geometric duration fits");
    add_common(dur_cmd);
    dur_cmd->add_option("--bins", an.bins, "unit-width histogram bins");
    dur_cmd->add_option("--truncation", an.truncation, "minimum duration included");
    CLI::App* seq_cmd = an_cmd->add_subcommand("sequences", "sequence count/length histograms");
    add_common(seq_cmd);
    CLI::App* met_cmd = an_cmd->add_subcommand("metrics", "per-topic metrics and correlations");
    add_common(met_cmd);
    met_cmd->add_option("--min-topics", an.min_topics, "top-retweeted topic threshold");
    met_cmd->add_option("--first-k", an.first_k, "initiators per topic");

    std::string report_in;
    CLI::App* report_cmd = app.add_subcommand("report", "collate analyses into one summary");
    report_cmd->add_option("--in", report_in, "analysis directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (sim_cmd->parsed()) {
        sim.params.noise_kind = noise_name == "lognormal" ? NoiseKind::lognormal
                                : noise_name == "gamma"   ? NoiseKind::gamma
                                                          : NoiseKind::degenerate;
        // convenience defaults: degenerate noise implies sigma2 = 0 and back
        if (!sim_cmd->count("--sigma2") && sim.params.noise_kind == NoiseKind::degenerate) {
            sim.params.sigma2 = 0.0;
        }
        if (!sim_cmd->count("--noise") && sim.params.sigma2 == 0.0) {
            sim.params.noise_kind = NoiseKind::degenerate;
        }
        try {
            sim.params.validate();
        } catch (const DomainError& e) {
            std::cerr << "usage error: " << e.what() << "\n";
            return 2;
        }
        try {
            run_simulate(sim);
            return 0;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }

    if (an_cmd->parsed()) {
        try {
            if (gamma_cmd->parsed()) run_analyze_gamma(an);
            if (ratios_cmd->parsed()) run_analyze_ratios(an);
            if (curv_cmd->parsed()) run_analyze_curvature(an);
            if (dur_cmd->parsed()) run_analyze_durations(an);
            if (seq_cmd->parsed()) run_analyze_sequences(an);
            if (met_cmd->parsed()) run_analyze_metrics(an);
            return 0;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }

    if (report_cmd->parsed()) {
        try {
            return run_report(report_in);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_app(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

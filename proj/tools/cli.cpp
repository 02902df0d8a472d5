#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "gammaconv/barnabani.hpp"
#include "gammaconv/errors.hpp"
#include "gammaconv/mathai.hpp"
#include "gammaconv/methods.hpp"
#include "gammaconv/moschopoulos.hpp"
#include "gammaconv/oracle.hpp"
#include "gammaconv/renewal.hpp"
#include "gammaconv/serialization.hpp"
#include "gammaconv/settings.hpp"

namespace gammaconv::cli {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kDefaultSeed = 20190611;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class F>
auto timed(F&& f, std::int64_t& ns) {
    const auto t0 = Clock::now();
    auto v = f();
    ns = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count();
    return v;
}

template <class F>
double median_us(unsigned replicates, F&& f) {
    std::vector<double> times;
    times.reserve(replicates);
    for (unsigned r = 0; r < replicates; ++r) {
        const auto t0 = Clock::now();
        f();
        times.push_back(std::chrono::duration<double, std::micro>(Clock::now() - t0).count());
    }
    std::sort(times.begin(), times.end());
    const std::size_t mid = times.size() / 2;
    return times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
}

// Keeps results alive so the timed loops are not optimized away.
volatile double g_sink = 0.0;

std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw UsageError("--grid expects lo:hi:count");
    double lo = 0.0;
    double hi = 0.0;
    long count = 0;
    try {
        std::size_t used = 0;
        lo = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("lo");
        hi = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("hi");
        count = std::stol(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("count");
    } catch (const std::logic_error&) {
        throw UsageError("--grid expects lo:hi:count with numeric fields");
    }
    if (count < 1 || hi < lo) throw UsageError("--grid needs count >= 1 and hi >= lo");
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        grid[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return grid;
}

std::string cpu_model() {
    std::ifstream in("/proc/cpuinfo");
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("model name", 0) == 0) {
            const auto colon = line.find(':');
            if (colon != std::string::npos) {
                std::string name = line.substr(colon + 1);
                name.erase(0, name.find_first_not_of(' '));
                std::replace(name.begin(), name.end(), ',', ' ');
                return name;
            }
        }
    }
    return "unknown";
}

std::string compiler_id() {
#if defined(__clang__)
    return std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    return std::string("gcc ") + __VERSION__;
#else
    return "unknown";
#endif
}

// Opens --out, with "-" or empty meaning the command's output stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw UsageError("cannot open output file " + path);
            stream_ = file_.get();
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

std::string join(const std::vector<double>& v, const char* sep = ";") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += format_value(v[i]);
    }
    return s;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
    std::string quantity;
    std::vector<double> shapes;
    std::vector<double> scales;
    std::vector<double> at;
    std::string grid;
    std::string method = "auto";
    std::optional<double> tol;
    std::optional<std::size_t> max_terms;
    std::string format = "csv";
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
    const auto quantity = parse_quantity(a.quantity);
    if (!quantity) throw UsageError("quantity must be density or cdf");
    const auto method = parse_method(a.method);
    if (!method) throw UsageError("unknown method " + a.method);
    if (a.at.empty() == a.grid.empty()) throw UsageError("give exactly one of --at or --grid");
    const std::vector<double> points = a.at.empty() ? parse_grid(a.grid) : a.at;

    const ConvolutionSpec spec = ConvolutionSpec::from_lists(a.shapes, a.scales);
    const Method resolved = resolve_method(*method, spec);
    SeriesControl ctrl = default_control(resolved, spec);
    if (a.tol) ctrl.rel_tol = *a.tol;
    if (a.max_terms) ctrl.max_terms = *a.max_terms;
    ctrl.validate();

    struct Row {
        double point;
        EvalResult result;
        std::int64_t ns;
    };
    std::vector<Row> rows;
    for (double x : points) {
        std::int64_t ns = 0;
        EvalResult r = timed([&] { return evaluate(*quantity, resolved, spec, x, ctrl); }, ns);
        rows.push_back({x, r, ns});
    }

    if (a.format == "json") {
        nlohmann::json doc;
        doc["quantity"] = std::string(to_string(*quantity));
        doc["method"] = std::string(to_string(resolved));
        doc["spec"] = spec;
        doc["rows"] = nlohmann::json::array();
        for (const auto& row : rows) {
            nlohmann::json j = row.result;
            j["point"] = row.point;
            j["method"] = std::string(to_string(resolved));
            j["wall_time_ns"] = row.ns;
            doc["rows"].push_back(j);
        }
        out << doc.dump(2) << '\n';
    } else {
        out << "point,value,terms_used,tail_bound,method,wall_time_ns\n";
        for (const auto& row : rows) {
            out << format_value(row.point) << ',' << format_value(row.result.value) << ','
                << row.result.terms_used << ','
                << (row.result.tail_bound ? format_value(*row.result.tail_bound) : std::string()) << ','
                << to_string(resolved) << ',' << row.ns << '\n';
        }
    }
    return kOk;
}

// ---------------------------------------------------------------- renewal

struct RenewalArgs {
    std::vector<double> weights;
    std::vector<double> scales;
    double t = 0.0;
    std::vector<unsigned> n;
    std::string method = "proposition";
    std::size_t budget = renewal::kDefaultCompositionBudget;
};

double renewal_pmf(const std::string& method, const MixtureExpSpec& mix, renewal::RenewalQuery q,
                   std::size_t budget) {
    const bool two = mix.size() == 2;
    if (method == "proposition") {
        return two ? renewal::pmf_s2(mix, q) : renewal::pmf_general(mix, q, Method::moschopoulos, {}, budget);
    }
    if (method == "raw-mathai") {
        return two ? renewal::pmf_raw_s2(mix, q, Method::mathai)
                   : renewal::pmf_general(mix, q, Method::mathai, {}, budget);
    }
    if (method == "raw-moschopoulos") {
        return two ? renewal::pmf_raw_s2(mix, q, Method::moschopoulos)
                   : renewal::pmf_general(mix, q, Method::moschopoulos, {}, budget);
    }
    if (method == "approx") return renewal::pmf_general(mix, q, Method::approx, {}, budget);
    throw UsageError("unknown renewal method " + method);
}

int cmd_renewal(const RenewalArgs& a, std::ostream& out) {
    if (a.n.empty()) throw UsageError("--n needs at least one count");
    const MixtureExpSpec mix = validate_mixture({a.weights, a.scales});
    out << "n,pmf,method,wall_time_ns\n";
    for (unsigned n : a.n) {
        std::int64_t ns = 0;
        const double p = timed([&] { return renewal_pmf(a.method, mix, {a.t, n}, a.budget); }, ns);
        out << n << ',' << format_value(p) << ',' << a.method << ',' << ns << '\n';
    }
    return kOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
    std::string suite;
    unsigned replicates = 100;
    std::size_t samples = 100000;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
};

std::string metadata_header() { return "cpu,compiler,replicates,samples,seed"; }

std::string metadata_row(const BenchArgs& a) {
    return cpu_model() + ',' + compiler_id() + ',' + std::to_string(a.replicates) + ',' +
           std::to_string(a.samples) + ',' + std::to_string(a.seed);
}

double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale = std::max(std::fabs(a[i]), std::fabs(b[i]));
        if (scale > 0.0) m = std::max(m, std::fabs(a[i] - b[i]) / scale);
    }
    return m;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

template <class F>
std::vector<double> over_grid(const std::vector<double>& grid, F&& f) {
    std::vector<double> v;
    v.reserve(grid.size());
    for (double x : grid) v.push_back(f(x));
    return v;
}

template <class F>
double time_grid(unsigned replicates, const std::vector<double>& grid, F&& f) {
    return median_us(replicates, [&] {
        double acc = 0.0;
        for (double x : grid) acc += f(x);
        g_sink = acc;
    });
}

void bench_coga2(const BenchArgs& a, std::ostream& out) {
    out << "shape,scale1,scale2,grid_lo,grid_hi,density_mathai_us,density_moschopoulos_us,cdf_mathai_us,"
           "cdf_moschopoulos_us,density_max_rel_diff,cdf_max_rel_diff,"
        << metadata_header() << '\n';
    const auto settings = settings::two_component();
    for (std::size_t i = 0; i < settings.size(); ++i) {
        const auto& st = settings[i];
        const ConvolutionSpec spec = st.spec();
        const auto grid = oracle::bulk_grid(spec, a.samples, oracle::derive_seed(a.seed, i));
        auto d_ma = [&](double x) { return mathai::density2(spec, x).value; };
        auto d_mo = [&](double x) { return moschopoulos::density(spec, x).value; };
        auto c_ma = [&](double x) { return mathai::cdf2(spec, x).value; };
        auto c_mo = [&](double x) { return moschopoulos::cdf(spec, x).value; };
        out << format_value(st.shape) << ',' << format_value(st.scales[0]) << ',' << format_value(st.scales[1])
            << ',' << format_value(grid.front()) << ',' << format_value(grid.back()) << ','
            << time_grid(a.replicates, grid, d_ma) << ',' << time_grid(a.replicates, grid, d_mo) << ','
            << time_grid(a.replicates, grid, c_ma) << ',' << time_grid(a.replicates, grid, c_mo) << ','
            << format_value(max_rel_diff(over_grid(grid, d_ma), over_grid(grid, d_mo))) << ','
            << format_value(max_rel_diff(over_grid(grid, c_ma), over_grid(grid, c_mo))) << ',' << metadata_row(a)
            << '\n';
    }
}

void bench_coga3(const BenchArgs& a, std::ostream& out) {
    out << "shape,scale1,scale2,scale3,grid_lo,grid_hi,density_mathai_us,density_moschopoulos_us,density_approx_us,"
           "cdf_mathai_us,cdf_moschopoulos_us,cdf_approx_us,density_max_rel_diff,cdf_max_rel_diff,"
           "density_approx_max_abs_diff,cdf_approx_max_abs_diff,"
        << metadata_header() << '\n';
    const auto settings = settings::three_component();
    for (std::size_t i = 0; i < settings.size(); ++i) {
        const auto& st = settings[i];
        const ConvolutionSpec spec = st.spec();
        const auto grid = oracle::bulk_grid(spec, a.samples, oracle::derive_seed(a.seed, i));
        auto d_ma = [&](double x) { return mathai::density_n(spec, x).value; };
        auto d_mo = [&](double x) { return moschopoulos::density(spec, x).value; };
        auto c_ma = [&](double x) { return mathai::cdf_n(spec, x).value; };
        auto c_mo = [&](double x) { return moschopoulos::cdf(spec, x).value; };
        // The approximation is fitted once per grid, inside the timed region.
        auto time_approx = [&](bool density) {
            return median_us(a.replicates, [&] {
                const barnabani::Approximation fit(spec);
                double acc = 0.0;
                for (double x : grid) acc += density ? fit.density(x).value : fit.cdf(x).value;
                g_sink = acc;
            });
        };
        const barnabani::Approximation fit(spec);
        const auto dens_mo = over_grid(grid, d_mo);
        const auto cdf_mo = over_grid(grid, c_mo);
        out << format_value(st.shape) << ',' << join(st.scales, ",") << ',' << format_value(grid.front()) << ','
            << format_value(grid.back()) << ',' << time_grid(a.replicates, grid, d_ma) << ','
            << time_grid(a.replicates, grid, d_mo) << ',' << time_approx(true) << ','
            << time_grid(a.replicates, grid, c_ma) << ',' << time_grid(a.replicates, grid, c_mo) << ','
            << time_approx(false) << ',' << format_value(max_rel_diff(over_grid(grid, d_ma), dens_mo)) << ','
            << format_value(max_rel_diff(over_grid(grid, c_ma), cdf_mo)) << ','
            << format_value(max_abs_diff(over_grid(grid, [&](double x) { return fit.density(x).value; }), dens_mo))
            << ','
            << format_value(max_abs_diff(over_grid(grid, [&](double x) { return fit.cdf(x).value; }), cdf_mo))
            << ',' << metadata_row(a) << '\n';
    }
}

void bench_renew2(const BenchArgs& a, std::ostream& out) {
    out << "scale1,scale2,weights,t,n,mathai_us,moschopoulos_us,proposed_us,pmf," << metadata_header() << '\n';
    for (const auto& st : settings::renewal_two_component()) {
        const MixtureExpSpec mix = st.mixture();
        const renewal::RenewalQuery q{settings::kRenewalHorizon, st.n};
        const double ma = median_us(a.replicates, [&] { g_sink = renewal::pmf_raw_s2(mix, q, Method::mathai); });
        const double mo =
            median_us(a.replicates, [&] { g_sink = renewal::pmf_raw_s2(mix, q, Method::moschopoulos); });
        const double pr = median_us(a.replicates, [&] { g_sink = renewal::pmf_s2(mix, q); });
        out << join(st.scales, ",") << ',' << join(st.weights) << ',' << format_value(q.t) << ',' << st.n << ','
            << ma << ',' << mo << ',' << pr << ',' << format_value(renewal::pmf_s2(mix, q)) << ','
            << metadata_row(a) << '\n';
    }
}

void bench_renew3(const BenchArgs& a, std::ostream& out) {
    out << "scale1,scale2,scale3,weights,t,n,mathai_us,moschopoulos_us,approx_us,exact_value,relative_error,"
        << metadata_header() << '\n';
    for (const auto& st : settings::renewal_three_component()) {
        const MixtureExpSpec mix = st.mixture();
        const renewal::RenewalQuery q{settings::kRenewalHorizon, st.n};
        const double ma =
            median_us(a.replicates, [&] { g_sink = renewal::pmf_general(mix, q, Method::mathai); });
        const double mo =
            median_us(a.replicates, [&] { g_sink = renewal::pmf_general(mix, q, Method::moschopoulos); });
        const double ap =
            median_us(a.replicates, [&] { g_sink = renewal::pmf_general(mix, q, Method::approx); });
        const double exact = renewal::pmf_general(mix, q, Method::moschopoulos);
        const double approx = renewal::pmf_general(mix, q, Method::approx);
        out << join(st.scales, ",") << ',' << join(st.weights) << ',' << format_value(q.t) << ',' << st.n << ','
            << ma << ',' << mo << ',' << ap << ',' << format_value(exact) << ','
            << format_value((approx - exact) / exact) << ',' << metadata_row(a) << '\n';
    }
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    if (a.replicates == 0) throw UsageError("--replicates must be positive");
    if (a.samples < 1000) throw UsageError("--samples must be at least 1000");
    Sink sink(a.out, out);
    if (a.suite == "coga2") bench_coga2(a, *sink);
    else if (a.suite == "coga3") bench_coga3(a, *sink);
    else if (a.suite == "renew2") bench_renew2(a, *sink);
    else if (a.suite == "renew3") bench_renew3(a, *sink);
    else throw UsageError("unknown suite " + a.suite);
    return kOk;
}

// ---------------------------------------------------------------- figure-error

struct FigureArgs {
    int setup = 0;
    std::size_t samples = 100000;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
};

int cmd_figure_error(const FigureArgs& a, std::ostream& out) {
    ConvolutionSpec spec;
    if (a.setup == 1) spec = ConvolutionSpec::from_lists({0.2, 0.2, 0.2}, {4.0, 0.3, 0.2});
    else if (a.setup == 2) spec = ConvolutionSpec::from_lists({2.0, 2.0, 2.0}, {0.4, 0.3, 0.2});
    else throw UsageError("--setup must be 1 or 2");
    if (a.samples < 1000) throw UsageError("--samples must be at least 1000");

    const auto grid = oracle::bulk_grid(spec, a.samples, a.seed);
    const barnabani::Approximation fit(spec);
    Sink sink(a.out, out);
    *sink << "x,exact_density,approx_density,density_diff,exact_cdf,approx_cdf,cdf_diff\n";
    for (double x : grid) {
        const double ed = moschopoulos::density(spec, x).value;
        const double ad = fit.density(x).value;
        const double ec = moschopoulos::cdf(spec, x).value;
        const double ac = fit.cdf(x).value;
        *sink << format_value(x) << ',' << format_value(ed) << ',' << format_value(ad) << ',' << format_value(ad - ed)
              << ',' << format_value(ec) << ',' << format_value(ac) << ',' << format_value(ac - ec) << '\n';
    }
    return kOk;
}

// ---------------------------------------------------------------- selftest

struct Check {
    std::string name;
    std::function<std::pair<bool, std::string>()> run;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

int cmd_selftest(std::uint64_t seed, std::ostream& out) {
    std::vector<Check> checks;

    checks.push_back({"cross-method agreement", [seed] {
        double worst = 0.0;
        std::vector<ConvolutionSpec> specs;
        for (const auto& st : settings::two_component()) {
            if (st.shape < 10.0) specs.push_back(st.spec());
        }
        for (const auto& st : settings::three_component()) {
            if (st.shape < 10.0) specs.push_back(st.spec());
        }
        for (std::size_t i = 0; i < specs.size(); ++i) {
            const auto& spec = specs[i];
            const auto grid = oracle::bulk_grid(spec, 20000, oracle::derive_seed(seed, i), 20);
            for (double x : grid) {
                for (Quantity q : {Quantity::density, Quantity::cdf}) {
                    const double a = evaluate(q, Method::mathai, spec, x, default_control(Method::mathai, spec)).value;
                    const double b =
                        evaluate(q, Method::moschopoulos, spec, x, default_control(Method::moschopoulos, spec)).value;
                    worst = std::max(worst, std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b)));
                }
            }
        }
        return std::pair{worst <= 1e-10, "max relative difference " + sci(worst)};
    }});

    checks.push_back({"normalization", [] {
        double worst = 0.0;
        for (const auto& spec : {ConvolutionSpec::from_lists({2.0, 2.0}, {0.4, 0.3}),
                                 ConvolutionSpec::from_lists({2.0, 2.0, 2.0}, {4.0, 3.0, 0.2})}) {
            double hi = spec.mean();
            while (moschopoulos::cdf(spec, hi).value < 1.0 - 1e-9) hi *= 2.0;
            const auto r =
                oracle::integrate([&](double x) { return x > 0.0 ? moschopoulos::density(spec, x).value : 0.0; },
                                  0.0, hi, 1e-12);
            worst = std::max(worst, std::fabs(r.value - moschopoulos::cdf(spec, hi).value));
        }
        return std::pair{worst <= 1e-7, "integral vs distribution function " + sci(worst)};
    }});

    checks.push_back({"hypoexponential closed form", [] {
        const std::vector<double> scales{1.0, 2.0, 4.0};
        const std::vector<double> rates{1.0, 0.5, 0.25};
        const ConvolutionSpec spec = ConvolutionSpec::from_lists({1.0, 1.0, 1.0}, scales);
        double worst = 0.0;
        for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
            const double ref = oracle::hypoexp_closed_form(rates, x);
            worst = std::max(worst, std::fabs(moschopoulos::density(spec, x).value - ref) / ref);
            worst = std::max(worst, std::fabs(mathai::density_n(spec, x).value - ref) / ref);
        }
        return std::pair{worst <= 1e-12, "max relative error " + sci(worst)};
    }});

    checks.push_back({"monte carlo distribution", [seed] {
        const std::size_t n = 20000;
        double worst_ratio = 0.0;
        std::size_t i = 0;
        for (const auto& spec : {ConvolutionSpec::from_lists({0.2, 0.2}, {4.0, 0.3}),
                                 ConvolutionSpec::from_lists({2.0, 2.0, 2.0}, {0.4, 0.3, 0.2})}) {
            auto sample = oracle::sample_convolution(spec, n, oracle::derive_seed(seed, 100 + i++));
            std::sort(sample.begin(), sample.end());
            double d = 0.0;
            for (double x : oracle::bulk_grid(sample, 100)) {
                d = std::max(d, std::fabs(oracle::empirical_cdf(sample, x) - moschopoulos::cdf(spec, x).value));
            }
            worst_ratio = std::max(worst_ratio, d / oracle::ks_critical(n, 1e-4));
        }
        return std::pair{worst_ratio <= 1.0, "largest distance / critical value " + sci(worst_ratio)};
    }});

    checks.push_back({"renewal identities", [] {
        double worst = 0.0;
        for (const auto& st : settings::renewal_two_component()) {
            const MixtureExpSpec mix = st.mixture();
            const renewal::RenewalQuery q{settings::kRenewalHorizon, st.n};
            const double p = renewal::pmf_s2(mix, q);
            worst = std::max(worst, std::fabs(p - renewal::pmf_raw_s2(mix, q, Method::moschopoulos)));
            worst = std::max(worst, std::fabs(p - renewal::pmf_general(mix, q, Method::moschopoulos)));
        }
        return std::pair{worst <= 1e-10, "max absolute difference " + sci(worst)};
    }});

    bool all = true;
    for (const auto& c : checks) {
        bool ok = false;
        std::string detail;
        try {
            std::tie(ok, detail) = c.run();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        all = all && ok;
        out << (ok ? "PASS " : "FAIL ") << c.name << ": " << detail << '\n';
    }
    out << (all ? "selftest passed" : "selftest FAILED") << '\n';
    return all ? kOk : 1;
}

}  // namespace

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Densities and distribution functions of sums of independent gamma variables", "gammaconv"};
    app.require_subcommand(1);

    EvalArgs eval;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a density or distribution function");
    eval_cmd->add_option("quantity", eval.quantity, "density or cdf")->required()->check(
        CLI::IsMember({"density", "cdf"}));
    eval_cmd->add_option("--shape", eval.shapes, "shapes a1,a2,...")->required()->delimiter(',');
    eval_cmd->add_option("--scale", eval.scales, "scales b1,b2,...")->required()->delimiter(',');
    eval_cmd->add_option("--at", eval.at, "points x1,x2,...")->delimiter(',');
    eval_cmd->add_option("--grid", eval.grid, "lo:hi:count");
    eval_cmd->add_option("--method", eval.method, "mathai|moschopoulos|approx|auto")
        ->check(CLI::IsMember({"mathai", "moschopoulos", "approx", "auto"}));
    eval_cmd->add_option("--tol", eval.tol, "relative tolerance");
    eval_cmd->add_option("--max-terms", eval.max_terms, "term budget");
    eval_cmd->add_option("--format", eval.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    RenewalArgs ren;
    auto* ren_cmd = app.add_subcommand("renewal", "event-count pmf of a renewal process");
    ren_cmd->add_option("--weights", ren.weights, "mixing weights")->required()->delimiter(',');
    ren_cmd->add_option("--scales", ren.scales, "exponential means")->required()->delimiter(',');
    ren_cmd->add_option("--t", ren.t, "time horizon")->required();
    ren_cmd->add_option("--n", ren.n, "counts n1,n2,...")->required()->delimiter(',');
    ren_cmd->add_option("--method", ren.method, "proposition|raw-mathai|raw-moschopoulos|approx")
        ->check(CLI::IsMember({"proposition", "raw-mathai", "raw-moschopoulos", "approx"}));
    ren_cmd->add_option("--budget", ren.budget, "composition budget");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "timing tables");
    bench_cmd->add_option("--suite", bench.suite, "coga2|coga3|renew2|renew3")
        ->required()
        ->check(CLI::IsMember({"coga2", "coga3", "renew2", "renew3"}));
    bench_cmd->add_option("--replicates", bench.replicates, "timing replicates");
    bench_cmd->add_option("--samples", bench.samples, "draws for the bulk range");
    bench_cmd->add_option("--seed", bench.seed, "base seed")->envname("GAMMACONV_SEED");
    bench_cmd->add_option("--out", bench.out, "output file, - for stdout");

    FigureArgs fig;
    auto* fig_cmd = app.add_subcommand("figure-error", "approximation error over the bulk grid");
    fig_cmd->add_option("--setup", fig.setup, "1 or 2")->required();
    fig_cmd->add_option("--samples", fig.samples, "draws for the bulk range");
    fig_cmd->add_option("--seed", fig.seed, "seed")->envname("GAMMACONV_SEED");
    fig_cmd->add_option("--out", fig.out, "output file, - for stdout");

    std::uint64_t selftest_seed = kDefaultSeed;
    auto* self_cmd = app.add_subcommand("selftest", "reduced-scale verification");
    self_cmd->add_option("--seed", selftest_seed, "seed")->envname("GAMMACONV_SEED");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*eval_cmd) return cmd_eval(eval, out);
        if (*ren_cmd) return cmd_renewal(ren, out);
        if (*bench_cmd) return cmd_bench(bench, out);
        if (*fig_cmd) return cmd_figure_error(fig, out);
        if (*self_cmd) return cmd_selftest(selftest_seed, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kNoConvergence;
    } catch (const FitError& e) {
        err << "error: approximation fit failed: " << e.what() << '\n';
        return kFitFailure;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << '\n';
        return kNoConvergence;
    }
    return kUsage;
}

}  // namespace gammaconv::cli

#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "loschmidt/analysis.hpp"
#include "loschmidt/cli.hpp"
#include "loschmidt/engine.hpp"

namespace loschmidt::cli {

namespace {

struct GlobalOpts {
    unsigned jobs = 1;
    bool deterministic = false;

    Execution exec() const {
        return Execution{jobs, (!deterministic && jobs > 1) ? Reduction::parallel : Reduction::sequential};
    }
};

struct SpecOpts {
    std::string model = "tfic";
    std::string size = "100";
    double delta_lambda = 0.0;
    double g = 0.0;
    double gamma = 0.0;
    int n_max = 0;
    std::string qrm_engine = "effective";

    QuenchExtras extras() const {
        QuenchExtras e;
        if (n_max > 0) e.n_max = n_max;
        if (qrm_engine == "full") {
            e.qrm_engine = QrmEngine::full;
        } else if (qrm_engine != "effective") {
            throw DomainError("qrm-engine must be effective or full");
        }
        return e;
    }

    QuenchSpec spec() const {
        return QuenchSpec{parse_model(model), parse_size(size), delta_lambda, g, gamma, extras()};
    }
};

void add_model_options(CLI::App* sub, SpecOpts& o) {
    sub->add_option("--model", o.model, "tfic | lmg | qrm | ssh")->capture_default_str();
    sub->add_option("--gamma", o.gamma, "LMG anisotropy in [0, 1)")->capture_default_str();
    sub->add_option("--n-max", o.n_max, "QRM Fock truncation (0 = engine default)")->capture_default_str();
    sub->add_option("--qrm-engine", o.qrm_engine, "effective | full")->capture_default_str();
}

void add_spec_options(CLI::App* sub, SpecOpts& o) {
    add_model_options(sub, o);
    sub->add_option("--size", o.size, "N, eta, or inf")->capture_default_str();
    sub->add_option("--delta-lambda", o.delta_lambda, "distance of lambda_i below 1")->capture_default_str();
    sub->add_option("--g", o.g, "quench amplitude, lambda_f = lambda_i - g")->capture_default_str();
}

std::vector<double> reals(const std::vector<std::string>& items) {
    std::vector<double> out;
    for (const auto& s : items) out.push_back(parse_real(s));
    return out;
}

class Output {
  public:
    Output(std::ostream& out, std::string meta) : out_(out), meta_(std::move(meta)) {}

    void emit(const std::string& path, const std::string& content) const {
        if (path.empty() || path == "-") {
            out_ << content;
            return;
        }
        write_file(path, content);
        write_file(path + ".meta", meta_);
    }

  private:
    static void write_file(const std::string& path, const std::string& content) {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw DomainError("cannot write '" + path + "'");
        f << content;
        if (!f) throw DomainError("write failed for '" + path + "'");
    }

    std::ostream& out_;
    std::string meta_;
};

// Re-usable config: globals, then the active subcommand's section with every value.
std::string meta_config(const GlobalOpts& g, const CLI::App& sub) {
    std::ostringstream os;
    os << "jobs=" << g.jobs << '\n' << "deterministic=" << (g.deterministic ? "true" : "false") << '\n';
    os << '[' << sub.get_name() << "]\n" << sub.config_to_str(true, false);
    return os.str();
}

std::string trace_label(const QuenchSpec& s) {
    return std::string(model_name(s.model)) + " N=" + format_size(s.size);
}

// --- trace -------------------------------------------------------------------------------

struct TraceOpts {
    SpecOpts spec;
    double periods = 2.0;
    std::size_t steps = 2001;
    double t_end = 0.0;
    std::string out;
    std::string svg;
};

void cmd_trace(const TraceOpts& o, const GlobalOpts& g, const Output& output) {
    const QuenchSpec spec = o.spec.spec();
    const PreparedQuench prepared = prepare(spec);
    const TimeGrid grid = o.t_end > 0.0 ? TimeGrid(0.0, o.t_end, o.steps) : make_time_grid(prepared, o.periods, o.steps);
    const EchoTrace trace = compute_trace(prepared, grid, g.exec());
    std::ostringstream csv;
    write_trace_csv(csv, trace);
    output.emit(o.out, csv.str());
    if (!o.svg.empty()) {
        PlotStyle style{"Loschmidt echo", "t", "L(t)", false, false};
        output.emit(o.svg, render_svg({PlotSeries{trace_label(spec), trace.times, trace.values}}, style));
    }
}

// --- sweep -------------------------------------------------------------------------------

struct SweepOpts {
    SpecOpts spec;
    std::vector<std::string> sizes{"100"};
    std::vector<std::string> gs;
    std::vector<std::string> xs;
    std::vector<std::string> delta_lambdas;
    double periods = 1.0;
    std::size_t steps = 2001;
    std::string out;
    std::string svg;
};

// A replayed config spells an unset list as "".
std::vector<std::string> drop_blank(std::vector<std::string> v) {
    std::erase(v, std::string{});
    return v;
}

void cmd_sweep(SweepOpts o, const GlobalOpts& g, const Output& output) {
    o.sizes = drop_blank(std::move(o.sizes));
    o.gs = drop_blank(std::move(o.gs));
    o.xs = drop_blank(std::move(o.xs));
    o.delta_lambdas = drop_blank(std::move(o.delta_lambdas));
    if (o.gs.empty() == o.xs.empty()) throw DomainError("sweep needs exactly one of --gs or --xs");
    const ModelId model = parse_model(o.spec.model);
    const auto exps = CriticalExponents::for_model(model);
    const auto dls = o.delta_lambdas.empty() ? std::vector<double>{o.spec.delta_lambda} : reals(o.delta_lambdas);
    const auto values = reals(o.gs.empty() ? o.xs : o.gs);
    std::vector<QuenchSpec> specs;
    for (const auto& s : o.sizes) {
        const SystemSize size = parse_size(s);
        for (double dl : dls) {
            for (double v : values) {
                double gv = v;
                if (!o.xs.empty()) {
                    if (size.is_infinite()) throw DomainError("--xs needs finite sizes");
                    gv = v * std::pow(size.value(), -1.0 / exps.nu);
                }
                specs.push_back(QuenchSpec{model, size, dl, gv, o.spec.gamma, o.spec.extras()});
            }
        }
    }
    analysis::SweepOptions sopts;
    sopts.periods = o.periods;
    sopts.steps = o.steps;
    sopts.exec = g.exec();
    const auto records = analysis::minima_sweep_points(specs, sopts);
    std::ostringstream csv;
    write_minima_csv(csv, records);
    output.emit(o.out, csv.str());
    if (!o.svg.empty()) {
        std::map<std::string, PlotSeries> by_size;
        std::vector<std::string> order;
        for (const auto& r : records) {
            const std::string key = format_size(r.minimum.spec.size);
            if (!by_size.count(key)) {
                order.push_back(key);
                by_size[key].label = "N=" + key;
            }
            const bool dl_axis = dls.size() > 1;
            by_size[key].xs.push_back(dl_axis ? r.minimum.spec.delta_lambda : r.scaling_variable);
            by_size[key].ys.push_back(r.minimum.l_min);
        }
        std::vector<PlotSeries> series;
        for (const auto& k : order) series.push_back(by_size[k]);
        PlotStyle style{"Echo minima", dls.size() > 1 ? "delta_lambda" : "N^{1/nu} g", "L_min", true, true};
        output.emit(o.svg, render_svg(series, style));
    }
}

// --- collapse ----------------------------------------------------------------------------

struct CollapseOpts {
    SpecOpts spec;
    std::vector<std::string> bs{"1", "1/2", "1/3", "1/4"};
    double nu = 0.0;
    double z = 0.0;
    double periods = 2.0;
    std::size_t steps = 2001;
    std::size_t points = analysis::kCollapsePoints;
    std::string out;
    std::string svg;
};

void cmd_collapse(const CollapseOpts& o, const GlobalOpts& g, const Output& output, std::ostream& out) {
    const QuenchSpec base = o.spec.spec();
    CriticalExponents exps = CriticalExponents::for_model(base.model);
    if (o.nu > 0.0) exps.nu = o.nu;
    if (o.z > 0.0) exps.z = o.z;
    const auto b_list = reals(o.bs);
    const TimeGrid grid = make_time_grid(prepare(base), o.periods, o.steps);
    const auto members = analysis::scaling_family(base, b_list, exps, grid, g.exec());
    const auto report = analysis::collapse_score(members, b_list, exps, o.points);
    std::ostringstream csv;
    write_collapse_csv(csv, members, b_list, exps, report);
    output.emit(o.out, csv.str());
    if (!o.out.empty() && o.out != "-") {
        out << "metric=" << format_double(report.metric) << '\n' << "sup_dev=" << format_double(report.sup_dev) << '\n';
    }
    if (!o.svg.empty()) {
        std::vector<PlotSeries> series;
        for (std::size_t j = 0; j < members.size(); ++j) {
            PlotSeries s{"b=" + format_double(b_list[j]), {}, members[j].values};
            const double scale = std::pow(b_list[j], exps.z);
            for (double t : members[j].times) s.xs.push_back(t * scale);
            series.push_back(std::move(s));
        }
        PlotStyle style{"Scaling collapse", "t (rescaled)", "L", false, false};
        output.emit(o.svg, render_svg(series, style));
    }
}

// --- fit ---------------------------------------------------------------------------------

struct FitOpts {
    std::string input;
    std::string kind = "power_law";
    std::string x = "scaling_variable";
    std::string y = "l_min";
    std::string window;
    std::string out;
};

void cmd_fit(const FitOpts& o, const Output& output) {
    const auto table = CsvTable::read_file(o.input);
    const auto kind = analysis::parse_fit_kind(o.kind);
    const auto xs = table.numbers(o.x);
    // "1-col" fits the complement, as used for small-quench laws
    std::vector<double> ys;
    if (o.y.rfind("1-", 0) == 0) {
        for (double v : table.numbers(o.y.substr(2))) ys.push_back(1.0 - v);
    } else {
        ys = table.numbers(o.y);
    }
    analysis::FitWindow window{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    if (!o.window.empty()) {
        const auto comma = o.window.find(',');
        if (comma == std::string::npos) throw DomainError("--window takes lo,hi");
        const std::array bounds{o.window.substr(0, comma), o.window.substr(comma + 1)};
        window = {parse_real(bounds[0]), parse_real(bounds[1])};
    }
    const auto r = analysis::fit(kind, xs, ys, window);
    std::ostringstream os;
    os << "kind=" << analysis::fit_kind_name(r.kind) << '\n'
       << "slope=" << format_double(r.slope) << '\n'
       << "intercept=" << format_double(r.intercept) << '\n'
       << "prefactor=" << format_double(r.prefactor) << '\n'
       << "r_squared=" << format_double(r.r_squared) << '\n'
       << "window_lo=" << format_double(r.window.lo) << '\n'
       << "window_hi=" << format_double(r.window.hi) << '\n'
       << "point_count=" << r.point_count << '\n';
    output.emit(o.out, os.str());
}

// --- oracle ------------------------------------------------------------------------------

struct OracleOpts {
    std::vector<std::string> models{"tfic", "lmg", "ssh", "qrm"};
    int size = 8;
};

bool cmd_oracle(const OracleOpts& o, std::ostream& out) {
    std::vector<ModelId> models;
    for (const auto& m : o.models) models.push_back(parse_model(m));
    const auto rows = run_oracles(models, o.size);
    bool ok = true;
    out << std::left << std::setw(6) << "model" << std::setw(9) << "size" << std::setw(24) << "max_dev"
        << std::setw(10) << "bound" << "status\n";
    for (const auto& r : rows) {
        out << std::left << std::setw(6) << r.model << std::setw(9) << r.size << std::setw(24)
            << format_double(r.max_dev) << std::setw(10) << format_double(r.bound) << (r.pass() ? "pass" : "FAIL")
            << '\n';
        ok = ok && r.pass();
    }
    return ok;
}

// --- plot --------------------------------------------------------------------------------

struct PlotOpts {
    std::string input;
    std::string svg;
    std::string x;
    std::string y;
    std::string title;
    bool loglog = false;
};

void cmd_plot(const PlotOpts& o, const Output& output, const std::string& fallback_out) {
    const auto table = CsvTable::read_file(o.input);
    if (table.rows() == 0) throw DomainError("empty CSV");
    std::string x = o.x;
    std::string y = o.y;
    std::string group;
    bool scatter = false;
    if (table.has("t_min")) {
        x = x.empty() ? "scaling_variable" : x;
        y = y.empty() ? "l_min" : y;
        group = "size";
        scatter = true;
    } else if (table.has("t_rescaled")) {
        x = x.empty() ? "t_rescaled" : x;
        y = y.empty() ? "L" : y;
        group = "b";
    } else if (table.has("t") && table.has("L")) {
        x = x.empty() ? "t" : x;
        y = y.empty() ? "L" : y;
        group = table.has("size") ? "size" : "";
    } else if (x.empty() || y.empty()) {
        throw DomainError("unrecognized CSV layout; pass --x and --y");
    }
    const auto xs = table.numbers(x);
    const auto ys = table.numbers(y);
    const auto keys = group.empty() ? std::vector<std::string>(table.rows(), "") : table.strings(group);
    std::vector<PlotSeries> series;
    std::map<std::string, std::size_t> slot;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        auto it = slot.find(keys[i]);
        if (it == slot.end()) {
            it = slot.emplace(keys[i], series.size()).first;
            series.push_back(PlotSeries{group.empty() ? y : group + "=" + keys[i], {}, {}});
        }
        series[it->second].xs.push_back(xs[i]);
        series[it->second].ys.push_back(ys[i]);
    }
    const PlotStyle style{o.title, x, y, o.loglog, scatter};
    const std::string path = o.svg.empty() ? fallback_out : o.svg;
    output.emit(path, render_svg(series, style));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Loschmidt echo quench dynamics and scaling analysis", "loschmidt"};
    app.config_formatter(std::make_shared<CLI::ConfigINI>());
    app.set_config("--config", "", "INI file of key=value lines, [subcommand] sections");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);

    GlobalOpts global;
    app.add_option("--jobs", global.jobs, "worker-pool width")->capture_default_str();
    app.add_flag("--deterministic", global.deterministic, "force sequential reductions");

    TraceOpts trace;
    auto* sub_trace = app.add_subcommand("trace", "sample L(t) for one quench")->configurable();
    add_spec_options(sub_trace, trace.spec);
    sub_trace->add_option("--periods", trace.periods, "window length in revival periods")->capture_default_str();
    sub_trace->add_option("--steps", trace.steps, "samples, endpoints inclusive")->capture_default_str();
    sub_trace->add_option("--t-end", trace.t_end, "explicit window end (overrides --periods)");
    sub_trace->add_option("--out", trace.out, "CSV path (default stdout)");
    sub_trace->add_option("--svg", trace.svg, "optional SVG plot path");

    SweepOpts sweep;
    auto* sub_sweep = app.add_subcommand("sweep", "refined first minima over a parameter grid")->configurable();
    add_model_options(sub_sweep, sweep.spec);
    sub_sweep->add_option("--delta-lambda", sweep.spec.delta_lambda, "distance of lambda_i below 1")
        ->capture_default_str();
    sub_sweep->add_option("--sizes", sweep.sizes, "sizes, comma separated")->delimiter(',')->capture_default_str();
    sub_sweep->add_option("--gs", sweep.gs, "quench amplitudes")->delimiter(',');
    sub_sweep->add_option("--xs", sweep.xs, "scaling variables N^{1/nu} g")->delimiter(',');
    sub_sweep->add_option("--delta-lambdas", sweep.delta_lambdas, "several delta_lambda values")->delimiter(',');
    sub_sweep->add_option("--periods", sweep.periods, "search window in revival periods")->capture_default_str();
    sub_sweep->add_option("--steps", sweep.steps, "grid samples per point")->capture_default_str();
    sub_sweep->add_option("--out", sweep.out, "CSV path (default stdout)");
    sub_sweep->add_option("--svg", sweep.svg, "optional SVG plot path");

    CollapseOpts collapse;
    auto* sub_collapse = app.add_subcommand("collapse", "score the scaling collapse of a family")->configurable();
    add_spec_options(sub_collapse, collapse.spec);
    sub_collapse->add_option("--bs", collapse.bs, "scaling factors (fractions allowed)")
        ->delimiter(',')
        ->capture_default_str();
    sub_collapse->add_option("--nu", collapse.nu, "override nu (0 = model default)");
    sub_collapse->add_option("--z", collapse.z, "override z (0 = model default)");
    sub_collapse->add_option("--periods", collapse.periods, "base window in revival periods")->capture_default_str();
    sub_collapse->add_option("--steps", collapse.steps, "samples per member")->capture_default_str();
    sub_collapse->add_option("--points", collapse.points, "common-axis points")->capture_default_str();
    sub_collapse->add_option("--out", collapse.out, "CSV path (default stdout)");
    sub_collapse->add_option("--svg", collapse.svg, "optional SVG plot path");

    FitOpts fit;
    auto* sub_fit = app.add_subcommand("fit", "least-squares fit of a minima CSV")->configurable();
    sub_fit->add_option("--input", fit.input, "CSV file")->required();
    sub_fit->add_option("--kind", fit.kind, "power_law | exponential | linear_loglog")->capture_default_str();
    sub_fit->add_option("--x", fit.x, "abscissa column")->capture_default_str();
    sub_fit->add_option("--y", fit.y, "ordinate column; 1-<col> fits the complement")->capture_default_str();
    sub_fit->add_option("--window", fit.window, "lo,hi on the abscissa");
    sub_fit->add_option("--out", fit.out, "report path (default stdout)");

    OracleOpts oracle;
    auto* sub_oracle = app.add_subcommand("oracle", "compare engines against brute-force references")->configurable();
    sub_oracle->add_option("--models", oracle.models, "models to check")->delimiter(',')->capture_default_str();
    sub_oracle->add_option("--size", oracle.size, "spin / cell count")->capture_default_str();

    PlotOpts plot;
    std::string plot_out;
    auto* sub_plot = app.add_subcommand("plot", "render a trace, minima or collapse CSV as SVG")->configurable();
    sub_plot->add_option("--input", plot.input, "CSV file")->required();
    sub_plot->add_option("--svg", plot.svg, "SVG path");
    sub_plot->add_option("--out", plot_out, "SVG path (alias of --svg)");
    sub_plot->add_option("--x", plot.x, "abscissa column");
    sub_plot->add_option("--y", plot.y, "ordinate column");
    sub_plot->add_option("--title", plot.title, "plot title");
    sub_plot->add_flag("--loglog", plot.loglog, "logarithmic axes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    const CLI::App* active = app.get_subcommands().front();
    const Output output(out, meta_config(global, *active));
    try {
        if (*sub_trace) cmd_trace(trace, global, output);
        if (*sub_sweep) cmd_sweep(sweep, global, output);
        if (*sub_collapse) cmd_collapse(collapse, global, output, out);
        if (*sub_fit) cmd_fit(fit, output);
        if (*sub_oracle && !cmd_oracle(oracle, out)) return 1;
        if (*sub_plot) cmd_plot(plot, output, plot_out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace loschmidt::cli

#include "cli.hpp"

#include "lhchi/algebra.hpp"
#include "lhchi/chisq.hpp"
#include "lhchi/coloring.hpp"
#include "lhchi/errors.hpp"
#include "lhchi/latin_square.hpp"
#include "lhchi/montecarlo.hpp"
#include "lhchi/ortho_design.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

namespace lhchi::cli {

namespace {

using nlohmann::json;

constexpr unsigned construct_guard = 6;

std::string fmt(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::uint64_t parse_u64(std::string_view text, const char* what) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ValidationError(std::string(what) + ": expected an unsigned integer, got '" +
                              std::string(text) + "'");
    }
    return v;
}

template <class T>
json rows_json(std::span<const T> row_major, std::size_t n) {
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        rows.push_back(std::vector<T>(row_major.begin() + static_cast<std::ptrdiff_t>(i * n),
                                      row_major.begin() + static_cast<std::ptrdiff_t>((i + 1) * n)));
    }
    return rows;
}

template <class T>
void write_grid(std::ostream& os, std::span<const T> row_major, std::size_t n, auto&& cell) {
    std::vector<std::string> text;
    std::size_t width = 0;
    for (const auto& v : row_major) {
        text.push_back(cell(v));
        width = std::max(width, text.back().size());
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j) os << ' ';
            os << std::setw(static_cast<int>(width)) << text[i * n + j];
        }
        os << '\n';
    }
}

std::string signed_symbol(int v, const char* symbol) {
    return (v < 0 ? "-" : "+") + std::string(symbol) + std::to_string(std::abs(v));
}

std::vector<int> flatten_square(const json& rows) {
    if (!rows.is_array() || rows.empty()) throw ValidationError("matrix must be a non-empty array of rows");
    const std::size_t n = rows.size();
    std::vector<int> flat;
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != n) throw ValidationError("matrix must be square");
        for (const auto& v : row) flat.push_back(v.get<int>());
    }
    return flat;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError("'" + path + "': " + e.what());
    }
}

/// A file holding {"H": [[...]]} as written by `enumerate`, or builtin:<index>.
SignedLatinSquare load_signed_square(const std::string& source) {
    if (source.rfind("builtin:", 0) == 0) {
        const auto idx = parse_u64(std::string_view(source).substr(8), "builtin index");
        if (idx >= latin_hadamard_catalog().size()) {
            throw ValidationError("builtin index must be below " +
                                  std::to_string(latin_hadamard_catalog().size()));
        }
        return catalog_matrix(idx);
    }
    const auto doc = read_json_file(source);
    const json* rows = &doc;
    if (doc.is_object()) {
        if (!doc.contains("H")) throw ValidationError("'" + source + "' has no \"H\" matrix");
        rows = &doc["H"];
    }
    try {
        return SignedLatinSquare::from_entries(flatten_square(*rows));
    } catch (const json::exception& e) {
        throw ValidationError("'" + source + "': " + e.what());
    }
}

ProbabilityVector parse_probabilities(const std::vector<std::string>& tokens) {
    if (tokens.size() == 1 && tokens[0].size() == 1 && std::isalpha(static_cast<unsigned char>(tokens[0][0]))) {
        return ProbabilityVector::preset(tokens[0][0]);
    }
    std::vector<double> p;
    for (const auto& t : tokens) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
            throw ValidationError("bad probability '" + t + "'");
        }
        p.push_back(v);
    }
    return ProbabilityVector(std::move(p));
}

struct Model {
    ProbabilityVector p;
    EigenbasisMatrix basis;
    std::string matrix;
};

/// First Latin-Hadamard matrix of order k, or Sylvester for equiprobable k = 16.
std::string default_matrix(const ProbabilityVector& p) {
    switch (p.size()) {
    case 2: return "coloring:1";
    case 4: return "builtin:0";
    case 8: return "builtin:2";
    default: return "sylvester";
    }
}

Model resolve_model(std::optional<ProbabilityVector> p, std::string matrix,
                    const std::vector<double>& pvars) {
    if (matrix == "design") {
        if (p) throw ValidationError("--matrix design derives p from --pvars; drop --p/--preset");
        if (pvars.empty()) throw ValidationError("--matrix design needs --pvars");
        const auto& d = builtin_design_16();
        auto cells = induced_cell_probabilities(d, pvars);
        auto basis = design_to_eigenbasis(d, pvars);
        return {std::move(cells), std::move(basis), matrix};
    }
    if (!pvars.empty()) throw ValidationError("--pvars only applies to --matrix design");
    if (!p) throw ValidationError("cell probabilities are required");
    if (matrix.empty()) matrix = default_matrix(*p);
    if (matrix == "sylvester") {
        const std::size_t k = p->size();
        if (k < 2 || (k & (k - 1)) != 0) throw ValidationError("Sylvester basis needs k a power of two");
        unsigned w = 0;
        while ((std::size_t{1} << w) < k) ++w;
        auto basis = eigenbasis_from_hadamard(sylvester_hadamard(w), *p);
        return {std::move(*p), std::move(basis), matrix};
    }
    if (matrix == "coloring:1") {
        auto basis = eigenbasis_from_latin_hadamard(color(LatinSquare(1), {}), *p);
        return {std::move(*p), std::move(basis), matrix};
    }
    auto basis = eigenbasis_from_latin_hadamard(load_signed_square(matrix), *p);
    return {std::move(*p), std::move(basis), matrix};
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---- subcommands ----------------------------------------------------------

struct ConstructOpts {
    int w = -1;
    std::string format = "json";
};

void cmd_construct(const ConstructOpts& o, std::ostream& os) {
    if (o.w < 0) throw ValidationError("--w must be non-negative");
    if (static_cast<unsigned>(o.w) > construct_guard) {
        throw ValidationError("w=" + std::to_string(o.w) + " exceeds the size guard (w <= " +
                              std::to_string(construct_guard) + ")");
    }
    const auto s = construct_latin_square(static_cast<unsigned>(o.w));
    const auto n = s.size();
    std::span<const int> e = s.entries();
    if (o.format == "json") {
        os << json{{"w", o.w}, {"entries", rows_json(e, n)}}.dump() << '\n';
    } else if (o.format == "csv") {
        for (std::size_t j = 1; j <= n; ++j) os << (j > 1 ? "," : "") << 'c' << j;
        os << '\n';
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 1; j <= n; ++j) os << (j > 1 ? "," : "") << s.at(i, j);
            os << '\n';
        }
    } else {
        write_grid(os, e, n, [](int v) { return std::to_string(v); });
    }
}

struct EnumerateOpts {
    int w = -1;
    bool valid_only = false;
    std::string format = "json";
};

void cmd_enumerate(const EnumerateOpts& o, unsigned threads, std::ostream& os) {
    if (o.w < 0) throw ValidationError("--w must be non-negative");
    if (static_cast<unsigned>(o.w) > max_enumeration_exponent) {
        throw ValidationError("w=" + std::to_string(o.w) + " exceeds the enumeration guard (w <= " +
                              std::to_string(max_enumeration_exponent) + ")");
    }
    const auto w = static_cast<unsigned>(o.w);
    const auto candidates = enumerate_colorings(LatinSquare(w), threads);
    json all = json::array();
    if (o.format == "csv") os << "index,choices,latin_hadamard,H\n";
    for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
        const auto& h = candidates[idx];
        const bool lh = is_latin_hadamard(h);
        if (o.valid_only && !lh) continue;
        const auto bits = to_bitstring(choices_from_index(w, idx));
        const auto entries = h.entries();
        if (o.format == "json") {
            all.push_back({{"w", w},
                           {"choices", bits},
                           {"H", rows_json<int>(entries, h.size())},
                           {"latin_hadamard", lh}});
        } else {
            os << idx << ',' << bits << ',' << (lh ? "true" : "false") << ',';
            for (std::size_t i = 0; i < entries.size(); ++i) os << (i ? " " : "") << entries[i];
            os << '\n';
        }
    }
    if (o.format == "json") os << all.dump() << '\n';
}

struct AlgebraOpts {
    int dim = 0;
    std::string from_coloring;
    std::string report = "table";
    std::string format = "pretty";
};

void cmd_algebra(const AlgebraOpts& o, std::ostream& os, std::ostream& err) {
    std::optional<AlgebraTable> table;
    if (o.dim == 0 && o.from_coloring.empty()) throw ValidationError("give --dim or --from-coloring");
    if (!o.from_coloring.empty()) {
        table = table_from_signed_square(load_signed_square(o.from_coloring));
    } else {
        if (o.dim < 1 || (o.dim & (o.dim - 1)) != 0) {
            throw ValidationError("--dim must be a power of two");
        }
        unsigned m = 0;
        while ((1 << m) < o.dim) ++m;
        if (m > max_cayley_dickson_exponent) {
            throw ValidationError("--dim must be at most " +
                                  std::to_string(1u << max_cayley_dickson_exponent));
        }
        table = cayley_dickson_table(m);
    }
    const std::size_t n = table->dim();
    if (o.report == "table") {
        std::vector<int> signed_idx;
        for (const auto& p : table->products()) signed_idx.push_back(p.sign * p.index);
        if (o.format == "json") {
            os << json{{"dim", n}, {"table", rows_json<int>(signed_idx, n)}}.dump() << '\n';
        } else {
            write_grid(os, std::span<const int>(signed_idx), n,
                       [](int v) { return signed_symbol(v, "e"); });
        }
        return;
    }
    const bool exhaustive = n <= 16;
    if (!exhaustive) err << "note: the (e_i +/- e_j) scan is not exhaustive above dimension 16\n";
    const auto zd = find_zero_divisors(*table);
    if (o.format == "json") {
        json list = json::array();
        for (const auto& z : zd) list.push_back(to_string(z));
        os << json{{"dim", n}, {"exhaustive", exhaustive}, {"count", zd.size()}, {"zero_divisors", list}}.dump()
           << '\n';
    } else {
        for (const auto& z : zd) os << to_string(z) << '\n';
    }
}

struct DesignOpts {
    bool show = false;
    bool verify = false;
    bool eigenbasis = false;
    std::vector<double> pvars;
    std::string format = "json";
};

int cmd_design(const DesignOpts& o, std::ostream& os) {
    if (o.show + o.verify + o.eigenbasis != 1) {
        throw ValidationError("choose exactly one of --show, --verify, --eigenbasis");
    }
    if (!o.pvars.empty() && !o.eigenbasis) throw ValidationError("--pvars requires --eigenbasis");
    const auto& d = builtin_design_16();
    const auto n = d.order();
    std::span<const SignedIndex> e = d.entries();
    if (o.show) {
        if (o.format == "json") {
            os << json{{"n", n}, {"num_vars", d.num_vars()}, {"type", d.type()}, {"entries", rows_json(e, n)}}
                      .dump()
               << '\n';
        } else {
            write_grid(os, e, n, [](int v) { return signed_symbol(v, "x"); });
        }
        return 0;
    }
    if (o.verify) {
        const bool ok = verify_design(d);
        const auto bound = radon(n);
        if (o.format == "json") {
            os << json{{"valid", ok}, {"n", n}, {"num_vars", d.num_vars()}, {"type", d.type()}, {"radon", bound}}
                      .dump()
               << '\n';
        } else {
            os << "valid: " << (ok ? "yes" : "no") << "\ntype: (";
            for (std::size_t i = 0; i < d.type().size(); ++i) os << (i ? "," : "") << d.type()[i];
            os << ")\nvariables: " << d.num_vars() << " (radon bound " << bound << ")\n";
        }
        return ok ? 0 : 2;
    }
    if (o.pvars.empty()) throw ValidationError("--eigenbasis needs --pvars");
    const auto p = induced_cell_probabilities(d, o.pvars);
    const auto basis = design_to_eigenbasis(d, o.pvars);
    if (o.format == "json") {
        os << json{{"p", p.values()}, {"O", rows_json(basis.matrix().data(), n)}}.dump() << '\n';
    } else {
        os << std::fixed << std::setprecision(6);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) os << (j ? " " : "") << std::setw(9) << basis(i, j);
            os << '\n';
        }
    }
    return 0;
}

struct DecomposeOpts {
    std::vector<std::string> p;
    std::vector<std::int64_t> counts;
    std::string matrix;
    std::vector<double> pvars;
};

void cmd_decompose(const DecomposeOpts& o, std::ostream& os) {
    std::optional<ProbabilityVector> p;
    if (!o.p.empty()) p = parse_probabilities(o.p);
    auto model = resolve_model(std::move(p), o.matrix, o.pvars);
    const CellCounts m(o.counts);
    const auto d = decompose(m, model.p, model.basis);
    os << json{{"X2", d.x2}, {"components", d.components}, {"sum_check", d.component_sum_of_squares()}}.dump()
       << '\n';
}

struct PowerOpts {
    std::string null = "normal:0,1";
    std::string alt;
    std::string preset;
    std::vector<std::string> p;
    std::string matrix;
    std::vector<double> pvars;
    std::size_t n = 200;
    std::size_t reps = 10000;
    double alpha = 0.05;
    std::string format = "table";
};

void cmd_power(const PowerOpts& o, std::uint64_t seed, unsigned threads, std::ostream& os) {
    const auto alt = DistributionSpec::parse(o.alt);
    const auto null = o.null == "matched" ? matched_normal_null(alt) : DistributionSpec::parse(o.null);
    std::optional<ProbabilityVector> p;
    if (!o.preset.empty() && !o.p.empty()) throw ValidationError("--preset and --p are mutually exclusive");
    if (!o.preset.empty()) {
        if (o.preset.size() != 1) throw ValidationError("--preset must be a, b or c");
        p = ProbabilityVector::preset(o.preset[0]);
    } else if (!o.p.empty()) {
        p = parse_probabilities(o.p);
    } else if (o.matrix != "design") {
        p = ProbabilityVector::preset('a');
    }
    auto model = resolve_model(std::move(p), o.matrix, o.pvars);

    const PowerSimConfig cfg{null, alt, model.p, model.basis, o.n, o.reps, o.alpha, seed, threads};
    const auto res = simulate_power(cfg);

    if (o.format == "csv") {
        os << "statistic,rate,se\n";
        for (std::size_t i = 0; i < res.statistics.size(); ++i) {
            os << res.statistics[i] << ',' << fmt(res.rates[i]) << ',' << fmt(res.standard_errors[i]) << '\n';
        }
    } else if (o.format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < res.statistics.size(); ++i) {
            rows.push_back({{"statistic", res.statistics[i]},
                            {"rejections", res.rejections[i]},
                            {"rate", res.rates[i]},
                            {"se", res.standard_errors[i]}});
        }
        const json config{{"null", null.to_string()}, {"alt", alt.to_string()}, {"p", model.p.values()},
                          {"matrix", model.matrix},   {"n", o.n},                {"reps", o.reps},
                          {"alpha", o.alpha},         {"seed", seed}};
        os << json{{"config", config},
                   {"critical", {{"x2", res.x2_critical}, {"z", res.z_critical}}},
                   {"results", rows}}
                  .dump()
           << '\n';
    } else {
        os << "null " << null.to_string() << ", alternative " << alt.to_string() << ", matrix " << model.matrix
           << "\nn=" << o.n << " reps=" << o.reps << " alpha=" << fmt(o.alpha) << " seed=" << seed << "\n\n";
        os << std::left << std::setw(10) << "statistic" << std::right << std::setw(8) << "rate" << std::setw(10)
           << "se" << '\n';
        os << std::fixed;
        for (std::size_t i = 0; i < res.statistics.size(); ++i) {
            os << std::left << std::setw(10) << res.statistics[i] << std::right << std::setprecision(4)
               << std::setw(8) << res.rates[i] << std::setprecision(5) << std::setw(10)
               << res.standard_errors[i] << '\n';
        }
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Latin-Hadamard matrices and chi-square component decompositions", "lhchi"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_path;
    unsigned threads = default_threads();
    std::uint64_t seed = 1;
    app.add_option("--out", out_path, "Write results to this file instead of stdout");
    app.add_option("--threads", threads, "Worker threads for enumeration and simulation")
        ->check(CLI::Range(1u, 1024u));
    app.add_option("--seed", seed, "Master seed (LH_SEED overrides)");

    ConstructOpts construct_o;
    auto* construct = app.add_subcommand("construct", "Print the structured Latin square of order 2^w");
    construct->add_option("--w", construct_o.w, "Exponent")->required();
    construct->add_option("--format", construct_o.format)->check(CLI::IsMember({"json", "csv", "pretty"}));

    EnumerateOpts enumerate_o;
    auto* enumerate = app.add_subcommand("enumerate", "Enumerate all colourings of S_w");
    enumerate->add_option("--w", enumerate_o.w, "Exponent")->required();
    enumerate->add_flag("--valid-only", enumerate_o.valid_only, "Keep Latin-Hadamard matrices only");
    enumerate->add_option("--format", enumerate_o.format)->check(CLI::IsMember({"json", "csv"}));

    AlgebraOpts algebra_o;
    auto* algebra = app.add_subcommand("algebra", "Cayley-Dickson tables and zero divisors");
    auto* dim_opt = algebra->add_option("--dim", algebra_o.dim, "Cayley-Dickson dimension");
    auto* from_opt = algebra->add_option("--from-coloring", algebra_o.from_coloring,
                                         "JSON file with an \"H\" matrix, or builtin:<index>");
    dim_opt->excludes(from_opt);
    algebra->add_option("--report", algebra_o.report)->check(CLI::IsMember({"table", "zero-divisors"}));
    algebra->add_option("--format", algebra_o.format)->check(CLI::IsMember({"pretty", "json"}));

    DesignOpts design_o;
    auto* design = app.add_subcommand("design", "The 16x16 nine-variable orthogonal design");
    auto* show_f = design->add_flag("--show", design_o.show);
    auto* verify_f = design->add_flag("--verify", design_o.verify);
    auto* eigen_f = design->add_flag("--eigenbasis", design_o.eigenbasis);
    show_f->excludes(verify_f)->excludes(eigen_f);
    verify_f->excludes(eigen_f);
    design->add_option("--pvars", design_o.pvars, "Nine variable probabilities")->delimiter(',');
    design->add_option("--format", design_o.format)->check(CLI::IsMember({"json", "pretty"}));

    DecomposeOpts decompose_o;
    auto* decompose_cmd = app.add_subcommand("decompose", "Partition Pearson's X^2 into components");
    decompose_cmd->add_option("--p", decompose_o.p, "Cell probabilities, or preset a|b|c")->delimiter(',');
    decompose_cmd->add_option("--counts", decompose_o.counts, "Observed cell counts")
        ->delimiter(',')
        ->required();
    decompose_cmd->add_option("--matrix", decompose_o.matrix,
                              "builtin:<index> | sylvester | design | JSON file");
    decompose_cmd->add_option("--pvars", decompose_o.pvars, "Variable probabilities for --matrix design")
        ->delimiter(',');

    PowerOpts power_o;
    auto* power = app.add_subcommand("power", "Monte Carlo power of X^2 and its components");
    power->add_option("--null", power_o.null, "Null spec, or 'matched' for a gamma alternative");
    power->add_option("--alt", power_o.alt, "Alternative spec, e.g. normal:0,1.3 t:2 gamma:5,0.2")
        ->required();
    power->add_option("--preset", power_o.preset)->check(CLI::IsMember({"a", "b", "c"}));
    power->add_option("--p", power_o.p, "Explicit cell probabilities")->delimiter(',');
    power->add_option("--matrix", power_o.matrix, "builtin:<index> | sylvester | design | JSON file");
    power->add_option("--pvars", power_o.pvars, "Variable probabilities for --matrix design")->delimiter(',');
    power->add_option("--n", power_o.n, "Sample size")->check(CLI::PositiveNumber);
    power->add_option("--reps", power_o.reps, "Replications")->check(CLI::PositiveNumber);
    power->add_option("--alpha", power_o.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
    power->add_option("--format", power_o.format)->check(CLI::IsMember({"table", "json", "csv"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    std::ostringstream buf;
    int code = 0;
    try {
        if (const char* env = std::getenv("LH_SEED"); env != nullptr && *env != '\0') {
            seed = parse_u64(env, "LH_SEED");
        }
        if (*construct) {
            cmd_construct(construct_o, buf);
        } else if (*enumerate) {
            cmd_enumerate(enumerate_o, threads, buf);
        } else if (*algebra) {
            cmd_algebra(algebra_o, buf, err);
        } else if (*design) {
            code = cmd_design(design_o, buf);
        } else if (*decompose_cmd) {
            cmd_decompose(decompose_o, buf);
        } else if (*power) {
            cmd_power(power_o, seed, threads, buf);
        }
    } catch (const ConsistencyError& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    }

    if (out_path.empty()) {
        out << buf.str();
    } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file || !(file << buf.str())) {
            err << "error: cannot write '" << out_path << "'\n";
            return 1;
        }
    }
    return code;
}

} // namespace lhchi::cli

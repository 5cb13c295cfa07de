#include "sraembed/cli.hpp"

#include "sraembed/sraembed.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <optional>
#include <sstream>

namespace sraembed {

namespace {

using io::Json;

// A usage problem detected after parsing (bad flag value, unknown label).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input;
    std::string second_input;
    std::string output;
    std::string ledger;
    std::string format = "json";
    std::string embedding;
    std::vector<std::string> subset;
    std::optional<double> alpha;
    std::optional<std::size_t> k;
    std::optional<double> theta;
    std::optional<double> zeta;
    std::optional<double> distortion;
    std::optional<std::uint64_t> seed;
};

std::string one_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

std::string join_witness(const Error& e) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < e.witness().size(); ++i) os << (i ? "," : "") << e.witness()[i];
    os << "]";
    return os.str();
}

void emit(const Options& opt, std::ostream& out, const std::string& text) {
    if (opt.output.empty())
        out << text;
    else
        io::write_file(opt.output, text);
}

double require_alpha(const Options& opt) {
    if (!opt.alpha) throw UsageError("--alpha is required");
    if (!(*opt.alpha > 0.0 && *opt.alpha < 1.0)) throw UsageError("--alpha must lie in (0,1)");
    return *opt.alpha;
}

Subset subset_from_labels(const FiniteMetricSpace& space, const std::vector<std::string>& labels) {
    if (labels.empty()) throw UsageError("--subset needs at least one label");
    std::vector<std::size_t> ids;
    for (const auto& l : labels) {
        const auto id = space.find_label(l);
        if (!id) throw UsageError("unknown label '" + l + "' in --subset");
        ids.push_back(id->value);
    }
    return Subset::from_unsorted(std::move(ids));
}

int cmd_validate(const Options& opt, std::ostream& out, std::ostream& err) {
    Json j;
    try {
        const auto space = io::read_space(opt.input);
        j["valid"] = true;
        j["points"] = space.size();
        out << io::dump(j);
        return kExitOk;
    } catch (const Error& e) {
        j["valid"] = false;
        j["error"] = std::string(to_string(e.kind()));
        j["message"] = one_line(e.message());
        j["witness"] = e.witness();
        out << io::dump(j);
        err << "invalid: " << one_line(e.what()) << "\n";
        return kExitFailure;
    }
}

int cmd_analyze(const Options& opt, std::ostream& out) {
    const double alpha = require_alpha(opt);
    const auto space = io::read_space(opt.input);
    Json j;
    j["points"] = space.size();
    j["alpha"] = alpha;
    const std::size_t free_k = sra_free_parameter(space, alpha);
    j["sra_free_k"] = free_k;
    j["doubling"] = io::to_json(space, doubling_constant_estimate(space));
    Json witnesses = Json::array();
    for (std::size_t k = 3; k < free_k; ++k) {
        if (auto w = find_sra_subspace(space, SraParams{alpha, k})) {
            Json entry;
            entry["k"] = k;
            entry["subset"] = io::labels_json(space, *w);
            witnesses.push_back(std::move(entry));
        }
    }
    j["witnesses"] = std::move(witnesses);
    if (opt.k) {
        if (*opt.k < 3) throw UsageError("--k must be >= 3");
        const SraParams params{alpha, *opt.k};
        Json radii = Json::array();
        if (*opt.k >= 4) {
            const CoreSubset core = build_core_subset(space, params);
            for (const auto& e : core.radii) radii.push_back(io::to_json(space, e));
            j["critical_radii"] = std::move(radii);
            j["core_subset"] = io::labels_json(space, core.members);
            j["core_warnings"] = core.warnings;
        } else {
            for (std::size_t x = 0; x < space.size(); ++x)
                radii.push_back(io::to_json(space, critical_radius(space, PointId{x}, params)));
            j["critical_radii"] = std::move(radii);
        }
    }
    emit(opt, out, io::dump(j));
    return kExitOk;
}

int cmd_embed(const Options& opt, std::ostream& out) {
    const double alpha = require_alpha(opt);
    const auto space = io::read_space(opt.input);
    std::size_t k = 0;
    if (opt.k) {
        if (*opt.k < 3) throw UsageError("--k must be >= 3");
        k = *opt.k;
    } else {
        k = sra_free_parameter(space, alpha);
    }
    const EmbedResult result = embed(space, k, alpha);
    const double bound = theoretical_bounds(result.constants);
    emit(opt, out, io::embedding_to_csv(space, result.map));
    if (!opt.ledger.empty()) {
        Json ledger;
        ledger["points"] = space.size();
        ledger["k"] = k;
        ledger["alpha"] = alpha;
        ledger["output_dim"] = result.map.dim();
        ledger["scale"] = result.map.scale;
        ledger["claimed_distortion"] = result.map.claimed_distortion;
        ledger["theoretical_bound"] = bound;
        ledger["constants"] = io::to_json(result.constants);
        if (space.size() >= 2) {
            AuditReport audit = distortion_audit(space, result.map);
            audit.checks.push_back(
                check_inequality("distortion<=theoretical-bound", bound, audit.distortion, Direction::AtMost));
            audit.checks.push_back(
                check_inequality("colipschitz>=scale", result.map.scale, audit.colipschitz, Direction::AtLeast));
            ledger["audit"] = io::to_json(space, audit);
        }
        io::write_file(opt.ledger, io::dump(ledger));
    }
    return kExitOk;
}

// Extends `phi` (defined on `anchor`) to the whole space using distance-map charts.
int run_extension(const Options& opt, std::ostream& out, const FiniteMetricSpace& space,
                  const Subset& anchor, PointMap phi) {
    const double theta = opt.theta.value_or(0.5);
    if (!(theta > 0.0 && theta <= 1.0)) throw UsageError("--theta must lie in (0,1]");
    if (opt.distortion) {
        if (!(*opt.distortion >= phi.claimed_distortion * (1.0 - kBoundSlack)))
            throw UsageError("--distortion is below the measured distortion of the input map");
        phi.claimed_distortion = *opt.distortion;
    }
    const double default_zeta = 5.0 * phi.claimed_distortion * std::sqrt(double(phi.dim())) / theta;
    if (opt.zeta && *opt.zeta < default_zeta) throw UsageError("--zeta is below 5 dist(phi) sqrt(n) / theta");

    // Chart dimension: the largest closed ball B_{f(x)}(x) that may need a chart.
    const ScaleFunction f = build_scale_function(space, anchor, theta);
    std::size_t nbar = 1;
    for (std::size_t x = 0; x < space.size(); ++x)
        if (f.values[x] > 0.0)
            nbar = std::max(nbar, ball(space, PointId{x}, f.values[x], BallKind::Closed).size());
    const ChartProvider provider =
        distance_chart_provider(space, nbar, [&f](PointId x) { return f.values[x.value]; });
    const double chart_distortion = std::sqrt(double(nbar));
    const std::size_t lambda = doubling_constant_estimate(space).lambda;

    const ExtensionResult ext =
        extend_embedding(space, anchor, phi, provider, theta, chart_distortion, nbar, lambda, opt.zeta);
    emit(opt, out, io::embedding_to_csv(space, ext.map));

    std::vector<CheckRecord> checks = audit_assouad(space, f, ext.assouad);
    double anchor_error = 0.0;
    for (PointId y : anchor) {
        const auto row = ext.map.value(y);
        const auto src = phi.value(y);
        for (std::size_t c = 0; c < row.size(); ++c)
            anchor_error = std::max(anchor_error, std::fabs(row[c] - (c < src.size() ? src[c] : 0.0)));
    }
    checks.push_back(check_inequality("anchor-identity", 0.0, anchor_error, Direction::AtMost));
    Json ledger;
    ledger["points"] = space.size();
    ledger["anchor"] = io::labels_json(space, anchor);
    ledger["theta"] = theta;
    ledger["zeta"] = ext.zeta;
    ledger["input_scale"] = ext.input_scale;
    ledger["input_distortion"] = ext.input_distortion;
    ledger["input_dim"] = phi.dim();
    ledger["chart_dim"] = nbar;
    ledger["chart_distortion"] = chart_distortion;
    ledger["doubling_lambda"] = lambda;
    ledger["output_dim"] = ext.map.dim();
    ledger["scale"] = ext.map.scale;
    ledger["claimed_distortion"] = ext.map.claimed_distortion;
    ledger["theoretical_bound"] = ext.map.claimed_distortion;
    ledger["degenerate"] = ext.degenerate;
    if (space.size() >= 2) {
        AuditReport audit = distortion_audit(space, ext.map);
        const double s = ext.input_scale;
        const double colip_bound =
            ext.degenerate ? s
                           : std::min(s / 5.0, 9.0 * theta * s /
                                                   (200.0 * ext.input_distortion * std::sqrt(double(phi.dim()))));
        audit.checks = checks;
        audit.checks.push_back(check_inequality("extension-co-Lipschitz", colip_bound, audit.colipschitz,
                                                Direction::AtLeast));
        audit.checks.push_back(check_inequality("extension-Lipschitz", ext.map.scale * ext.map.claimed_distortion,
                                                audit.lipschitz, Direction::AtMost));
        ledger["audit"] = io::to_json(space, audit);
    } else {
        Json arr = Json::array();
        for (const auto& c : checks) arr.push_back(io::to_json(c));
        ledger["checks"] = std::move(arr);
    }
    ledger["assouad"] = io::assouad_debug_json(space, ext.assouad);
    if (!opt.ledger.empty()) io::write_file(opt.ledger, io::dump(ledger));
    return kExitOk;
}

// Measured scale and distortion of a map given on at least one point.
void measure_constants(const FiniteMetricSpace& space, PointMap& phi) {
    if (phi.size() < 2) {
        phi.scale = 1.0;
        phi.claimed_distortion = 1.0;
    } else {
        const AuditReport a = distortion_audit(space, phi);
        if (!(a.colipschitz > 0.0))
            throw Error(ErrorKind::InvalidArgument, "input embedding is not injective on its domain");
        phi.scale = a.colipschitz;
        phi.claimed_distortion = a.distortion;
    }
    phi.verified = true;
}

int cmd_assouad(const Options& opt, std::ostream& out) {
    const auto space = io::read_space(opt.input);
    const Subset anchor = subset_from_labels(space, opt.subset);
    // Frechet map y -> (d(y, y'))_{y' in Y}: scale 1, distortion at most sqrt(|Y|).
    PointMap phi(anchor, anchor.size());
    for (std::size_t a = 0; a < anchor.size(); ++a)
        for (std::size_t b = 0; b < anchor.size(); ++b) phi.row(a)[b] = space.d(anchor[a], anchor[b]);
    measure_constants(space, phi);
    phi.scale = 1.0;
    phi.claimed_distortion = std::max(phi.claimed_distortion, std::sqrt(double(anchor.size())));
    return run_extension(opt, out, space, anchor, std::move(phi));
}

int cmd_extend(const Options& opt, std::ostream& out) {
    const auto space = io::read_space(opt.input);
    PointMap phi = io::parse_embedding_csv(io::read_file(opt.embedding), space);
    if (phi.size() == 0) throw UsageError("embedding file has no rows");
    if (!opt.subset.empty() && !(subset_from_labels(space, opt.subset) == phi.domain()))
        throw UsageError("--subset does not match the rows of the embedding file");
    measure_constants(space, phi);
    const Subset anchor = phi.domain();
    return run_extension(opt, out, space, anchor, std::move(phi));
}

int cmd_audit(const Options& opt, std::ostream& out) {
    const auto space = io::read_space(opt.input);
    const PointMap map = io::parse_embedding_csv(io::read_file(opt.second_input), space);
    AuditReport report = distortion_audit(space, map);
    if (!opt.ledger.empty()) {
        Json ledger;
        try {
            ledger = Json::parse(io::read_file(opt.ledger));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::ParseError, std::string("ledger: ") + e.what());
        }
        if (ledger.contains("theoretical_bound"))
            report.checks.push_back(check_inequality("distortion<=theoretical-bound",
                                                     ledger["theoretical_bound"].get<double>(),
                                                     report.distortion, Direction::AtMost));
        if (ledger.contains("scale"))
            report.checks.push_back(check_inequality("colipschitz>=scale", ledger["scale"].get<double>(),
                                                     report.colipschitz, Direction::AtLeast));
    }
    if (opt.distortion)
        report.checks.push_back(
            check_inequality("distortion<=given", *opt.distortion, report.distortion, Direction::AtMost));
    emit(opt, out, io::dump(io::to_json(space, report)));
    return report.all_checks_pass() ? kExitOk : kExitFailure;
}

int cmd_gen(const Options& opt, std::ostream& out) {
    GenSpec spec = io::parse_gen_spec(io::read_file(opt.input));
    if (opt.seed) spec.seed = *opt.seed;
    const auto space = generate(spec);
    if (opt.format == "csv")
        emit(opt, out, io::space_to_csv(space));
    else
        emit(opt, out, io::space_to_json(space));
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bi-Lipschitz embeddings of finite metric spaces free of SRA subsets", "sraembed"};
    app.require_subcommand(1);
    Options opt;

    auto* validate = app.add_subcommand("validate", "Check that a distance matrix is a metric");
    validate->add_option("input", opt.input, "Space file (JSON or CSV)")->required();

    auto* analyze = app.add_subcommand("analyze", "SRA-free parameter, doubling estimate, witnesses");
    analyze->add_option("input", opt.input, "Space file")->required();
    analyze->add_option("--alpha", opt.alpha, "SRA parameter in (0,1)");
    analyze->add_option("--k", opt.k, "Also report R(x) and the core subset for this k");
    analyze->add_option("-o,--output", opt.output, "Write JSON here instead of stdout");

    auto* emb = app.add_subcommand("embed", "Embed a space free of k-point SRA(alpha) subsets");
    emb->add_option("input", opt.input, "Space file")->required();
    emb->add_option("--alpha", opt.alpha, "SRA parameter in (0,1)");
    emb->add_option("--k", opt.k, "Subset size (default: smallest k the space is free of)");
    emb->add_option("-o,--output", opt.output, "Embedding CSV (default stdout)");
    emb->add_option("--ledger", opt.ledger, "Write the constants ledger JSON here");

    auto* extend = app.add_subcommand("extend", "Extend a given embedding of a subset to the whole space");
    extend->add_option("input", opt.input, "Space file")->required();
    extend->add_option("--embedding", opt.embedding, "Embedding CSV of the subset")->required();
    extend->add_option("--subset", opt.subset, "Labels of the subset (checked against the CSV)")->delimiter(',');
    extend->add_option("--theta", opt.theta, "Scale factor theta in (0,1] (default 0.5)");
    extend->add_option("--zeta", opt.zeta, "Override zeta (>= 5 dist sqrt(n) / theta)");
    extend->add_option("--distortion", opt.distortion, "Claimed distortion of the input embedding");
    extend->add_option("-o,--output", opt.output, "Embedding CSV (default stdout)");
    extend->add_option("--ledger", opt.ledger, "Write the extension ledger JSON here");

    auto* assouad = app.add_subcommand("assouad", "Extend the distance map of a subset with the scale-net map");
    assouad->add_option("input", opt.input, "Space file")->required();
    assouad->add_option("--subset", opt.subset, "Comma-separated labels of the subset")->required()->delimiter(',');
    assouad->add_option("--theta", opt.theta, "Scale factor theta in (0,1] (default 0.5)");
    assouad->add_option("--zeta", opt.zeta, "Override zeta (>= 5 dist sqrt(n) / theta)");
    assouad->add_option("--distortion", opt.distortion, "Claimed distortion of the subset map");
    assouad->add_option("-o,--output", opt.output, "Embedding CSV (default stdout)");
    assouad->add_option("--ledger", opt.ledger, "Write the ledger and debug dump JSON here");

    auto* audit = app.add_subcommand("audit", "Measure Lipschitz, co-Lipschitz and distortion of an embedding");
    audit->add_option("space", opt.input, "Space file")->required();
    audit->add_option("embedding", opt.second_input, "Embedding CSV")->required();
    audit->add_option("--ledger", opt.ledger, "Ledger from embed; adds its bound checks");
    audit->add_option("--distortion", opt.distortion, "Check distortion against this bound");
    audit->add_option("-o,--output", opt.output, "Write JSON here instead of stdout");

    auto* gen = app.add_subcommand("gen", "Generate an instance from a JSON spec");
    gen->add_option("spec", opt.input, "Spec JSON file")->required();
    gen->add_option("--seed", opt.seed, "Override the spec seed");
    gen->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    gen->add_option("-o,--output", opt.output, "Output file (default stdout)");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage: " << one_line(e.what()) << "\n";
        return kExitUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(opt, out, err);
        if (analyze->parsed()) return cmd_analyze(opt, out);
        if (emb->parsed()) return cmd_embed(opt, out);
        if (extend->parsed()) return cmd_extend(opt, out);
        if (assouad->parsed()) return cmd_assouad(opt, out);
        if (audit->parsed()) return cmd_audit(opt, out);
        if (gen->parsed()) return cmd_gen(opt, out);
    } catch (const UsageError& e) {
        err << "usage: " << one_line(e.what()) << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << one_line(e.what());
        if (!e.witness().empty()) err << " witness=" << join_witness(e);
        if (e.level() >= 0) err << " level=" << e.level();
        err << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << one_line(e.what()) << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace sraembed

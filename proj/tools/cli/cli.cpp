#include "cli.hpp"

#include <cvxdiff/certificate_io.hpp>
#include <cvxdiff/constructions.hpp>
#include <cvxdiff/sequence_io.hpp>
#include <cvxdiff/solver.hpp>
#include <cvxdiff/verify.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cvxdiff::cli {

namespace {

struct RawFlags
{
    std::string offsets;
    std::string format;
};

void add_common(CLI::App* sub, Command& c, RawFlags& raw, std::initializer_list<const char*> flags)
{
    for (std::string f : flags) {
        if (f == "seq")
            sub->add_option("--seq", c.seq, "sequence file (JSON)");
        else if (f == "offsets")
            sub->add_option("--offsets", raw.offsets, "offsets, e.g. 1,2,4 or 1..4");
        else if (f == "n")
            sub->add_option("--n", c.n, "sequence length");
        else if (f == "kconvex")
            sub->add_option("--kconvex", c.kconvex, "convexity order (default 1)");
        else if (f == "family")
            sub->add_option("--family", c.family, "fibonacci | theorem1 | section32");
        else if (f == "budget")
            sub->add_option("--budget-seconds", c.budget_seconds, "wall-clock budget");
        else if (f == "nodes")
            sub->add_option("--budget-nodes", c.budget_nodes, "search node budget");
        else if (f == "workers")
            sub->add_option("--workers", c.workers, "worker threads");
        else if (f == "paper")
            sub->add_flag("--use-paper-bounds", c.use_paper_bounds, "start from published lower bounds");
        else if (f == "out")
            sub->add_option("--out", c.out, "output path");
        else if (f == "format")
            sub->add_option("--format", raw.format, "json | csv | text");
        else if (f == "seed")
            sub->add_option("--seed", c.seed, "random seed");
        else if (f == "samples")
            sub->add_option("--samples", c.samples, "sample count for random rows");
        else if (f == "nonconvex")
            sub->add_flag("--allow_nonconvex", c.allow_nonconvex, "accept non-convex input");
        else if (f == "values")
            sub->add_flag("--values", c.show_values, "print the set itself");
        else if (f == "config")
            sub->add_option("--config", c.config, "report config path, or 'default'");
        else if (f == "resume")
            sub->add_option("--resume", c.resume, "frontier snapshot to continue from");
        else if (f == "frontier")
            sub->add_option("--frontier", c.frontier, "where to write the snapshot on budget exhaustion");
        else if (f == "cert")
            sub->add_option("--cert", c.cert, "certificate file to check");
        else if (f == "seed-bound")
            sub->add_option("--seed-bound", c.seed_bound, "seed range for the section32 search");
    }
}

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw UsageError(what);
}

void validate(Command& c, const RawFlags& raw)
{
    if (!raw.offsets.empty()) {
        try {
            c.offsets = OffsetSet::parse(raw.offsets);
        }
        catch (const FormatError& e) {
            throw UsageError(std::string("--offsets: ") + e.what());
        }
        catch (const RangeError& e) {
            throw UsageError(std::string("--offsets: ") + e.what());
        }
    }
    if (!raw.format.empty()) {
        if (raw.format == "json")
            c.format = Format::json;
        else if (raw.format == "csv")
            c.format = Format::csv;
        else if (raw.format == "text")
            c.format = Format::text;
        else
            throw UsageError("--format must be json, csv or text");
    }
    require(c.kconvex >= 1, "--kconvex must be at least 1");
    require(c.workers >= 1, "--workers must be at least 1");
    require(!c.budget_seconds || *c.budget_seconds > 0, "--budget-seconds must be positive");
    require(!c.samples || *c.samples >= 0, "--samples must be nonnegative");
    require(!c.n || *c.n >= 2, "--n must be at least 2");
    if (c.n && c.offsets)
        require(c.offsets->max() <= *c.n - 1, "offset " + std::to_string(c.offsets->max()) + " does not fit n = " +
                                                  std::to_string(*c.n));

    if (c.name == "compute") {
        require(c.seq.has_value(), "compute needs --seq");
        require(c.offsets.has_value(), "compute needs --offsets");
    }
    else if (c.name == "construct") {
        require(c.family.has_value(), "construct needs --family");
        require(c.n.has_value(), "construct needs --n");
        const auto& f = *c.family;
        require(f == "fibonacci" || f == "theorem1" || f == "section32",
                "--family must be fibonacci, theorem1 or section32");
        require(f != "theorem1" || *c.n >= 5, "the theorem1 family needs --n >= 5");
        require(f != "section32" || *c.n >= 10, "the section32 family needs --n >= 10");
        require(c.seed_bound >= 0, "--seed-bound must be nonnegative");
    }
    else if (c.name == "minimize") {
        if (!c.resume) {
            require(c.n.has_value(), "minimize needs --n");
            require(c.offsets.has_value(), "minimize needs --offsets");
        }
    }
    else if (c.name == "scan") {
        require(c.offsets.has_value(), "scan needs --offsets (the i values)");
        require(c.seq.has_value() || (c.family && c.n), "scan needs --seq or --family with --n");
    }
}

void emit(const Command& c, const std::string& text, std::ostream& out)
{
    if (!c.out) {
        out << text;
        return;
    }
    std::ofstream f(*c.out);
    if (!f)
        throw IoError("cannot write " + *c.out);
    f << text;
    if (!f)
        throw IoError("write failed for " + *c.out);
}

ConvexSequence build_family(const std::string& family, int n, std::int64_t seed_bound)
{
    if (family == "fibonacci")
        return fibonacci_set(n);
    if (family == "theorem1")
        return d3_extremal_set(n);
    return recurrence_set(lag236_seed_search(n, seed_bound));
}

DiffSet raw_diffs(const std::vector<Rat>& v, const OffsetSet& offsets)
{
    std::vector<Rat> d;
    for (int j : offsets.offsets())
        for (std::size_t y = 0; y + static_cast<std::size_t>(j) < v.size(); ++y)
            d.push_back(v[y + static_cast<std::size_t>(j)] - v[y]);
    return DiffSet::from_unsorted(std::move(d));
}

int do_compute(const Command& c, std::ostream& out)
{
    auto values = read_sequence_file(*c.seq, c.allow_nonconvex);
    c.offsets->require_fits(values.size());
    DiffSet d = is_convex(values) && values.size() >= 2
                    ? local_diffs(ConvexSequence::from_values(values), *c.offsets)
                    : raw_diffs(values, *c.offsets);
    std::ostringstream s;
    switch (c.format.value_or(Format::text)) {
    case Format::text:
        s << d.size() << '\n';
        if (c.show_values) {
            for (std::size_t k = 0; k < d.size(); ++k)
                s << (k ? " " : "") << format_rat(d.values()[k]);
            s << '\n';
        }
        break;
    case Format::csv:
        s << "n,offsets,count\n" << values.size() << ",\"" << c.offsets->to_string() << "\"," << d.size() << '\n';
        break;
    case Format::json: {
        nlohmann::json j{{"n", values.size()}, {"offsets", c.offsets->offsets()}, {"count", d.size()}};
        if (c.show_values)
            j["values"] = sequence_to_json(d.values())["values"];
        s << j.dump(1) << '\n';
        break;
    }
    }
    emit(c, s.str(), out);
    return exit_ok;
}

int do_construct(const Command& c, std::ostream& out)
{
    auto s = build_family(*c.family, *c.n, c.seed_bound);
    auto doc = sequence_to_json(s.values());
    if (c.out)
        write_sequence_file(*c.out, s.values());
    else
        out << doc.dump() << '\n';
    return exit_ok;
}

int do_minimize(const Command& c, std::ostream& out, std::ostream& err)
{
    SolverOptions opt;
    opt.convexity_k = c.kconvex;
    opt.workers = c.workers;
    opt.use_paper_bounds = c.use_paper_bounds;
    opt.budget.seconds = c.budget_seconds;
    opt.budget.nodes = c.budget_nodes;

    MinOutcome r = c.resume ? resume_minimize(read_frontier_file(*c.resume), opt)
                            : minimize_distinct(static_cast<std::size_t>(*c.n), *c.offsets, opt);
    const bool json = c.format.value_or(Format::text) == Format::json;

    if (r.status == MinOutcome::Status::budget_exhausted) {
        std::string path = c.frontier.value_or(c.out ? *c.out + ".frontier" : "minimize.frontier");
        write_frontier_file(path, r.frontier);
        if (json)
            out << nlohmann::json{{"status", "budget_exhausted"}, {"lower", r.lower}, {"upper", r.upper},
                                  {"nodes", r.nodes}, {"frontier", path}}
                       .dump(1)
                << '\n';
        else
            out << "budget exhausted: " << r.lower << " <= value <= " << r.upper << " (frontier " << path << ")\n";
        return exit_budget;
    }

    const auto& res = *r.result;
    if (!verify_certificate(res.certificate)) {
        err << "internal error: the certificate does not verify\n";
        return exit_check_failed;
    }
    if (c.out)
        write_certificate_file(*c.out, res.certificate);
    if (json)
        out << nlohmann::json{{"status", "solved"}, {"value", res.value}, {"nodes", r.nodes},
                              {"witness", sequence_to_json(res.witness.values())["values"]}}
                   .dump(1)
            << '\n';
    else
        out << res.value << '\n';
    return exit_ok;
}

nlohmann::json load_config(const Command& c)
{
    if (!c.config || *c.config == "default")
        return default_report_config();
    std::ifstream in(*c.config);
    if (!in)
        throw IoError("cannot open " + *c.config);
    try {
        return nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::parse_error& e) {
        throw FormatError(*c.config + ": " + e.what());
    }
}

int do_verify(const Command& c, std::ostream& out, std::ostream& err)
{
    if (c.cert) {
        auto cert = read_certificate_file(*c.cert);
        bool ok = verify_certificate(cert);
        out << (ok ? "certificate ok" : "certificate FAILED") << ": value " << cert.value << " for n = " << cert.n
            << ", I = {" << cert.offsets.to_string() << "}, k = " << cert.convexity_k << '\n';
        return ok ? exit_ok : exit_check_failed;
    }
    auto config = load_config(c);
    for (auto& row : config["rows"]) {
        const auto family = row.value("family", std::string{});
        if (family != "random" && family != "random2")
            continue;
        if (c.samples)
            row["samples"] = *c.samples;
        if (c.seed != 1)
            row["seed"] = c.seed;
    }
    auto report = run_report(config, c.workers);
    std::string text;
    switch (c.format.value_or(Format::text)) {
    case Format::text: text = report_text(report); break;
    case Format::csv: text = report_csv(report); break;
    case Format::json: text = report_json(report).dump(1) + "\n"; break;
    }
    emit(c, text, out);
    if (c.out)
        err << "passed " << report.passed << ", failed " << report.failed << ", findings " << report.findings
            << ", errors " << report.errors << '\n';
    return report.ok() ? exit_ok : exit_check_failed;
}

int do_scan(const Command& c, std::ostream& out)
{
    ConvexSequence s = c.seq ? ConvexSequence::from_values(read_sequence_file(*c.seq))
                             : build_family(*c.family, *c.n, c.seed_bound);
    auto rows = growth_scan(s, c.offsets->offsets());
    std::string text;
    switch (c.format.value_or(Format::csv)) {
    case Format::csv: text = scan_csv(rows); break;
    case Format::json: {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows)
            arr.push_back({{"i", r.i}, {"observed", r.observed}, {"reference", r.reference}, {"ratio", r.ratio}});
        text = nlohmann::json{{"n", s.size()}, {"rows", arr}}.dump(1) + "\n";
        break;
    }
    case Format::text: {
        std::ostringstream o;
        for (const auto& r : rows)
            o << "i=" << r.i << " |D_i|=" << r.observed << " ratio=" << r.ratio << '\n';
        text = o.str();
        break;
    }
    }
    emit(c, text, out);
    return exit_ok;
}

} // namespace

Command parse(const std::vector<std::string>& args)
{
    CLI::App app{"Local difference sets of convex sequences", "cvxdiff"};
    app.require_subcommand(1);
    Command c;
    RawFlags raw;

    auto* compute = app.add_subcommand("compute", "size of D_I(S) for a sequence file");
    add_common(compute, c, raw, {"seq", "offsets", "format", "out", "nonconvex", "values"});
    auto* construct = app.add_subcommand("construct", "write one of the built-in sequence families");
    add_common(construct, c, raw, {"family", "n", "out", "seed-bound"});
    auto* minimize = app.add_subcommand("minimize", "exact minimum of |D_I(S)| with a certificate");
    add_common(minimize, c, raw,
               {"n", "offsets", "kconvex", "budget", "nodes", "workers", "paper", "out", "format", "resume", "frontier"});
    auto* verify = app.add_subcommand("verify", "run the claim checks, or check a certificate");
    add_common(verify, c, raw, {"config", "cert", "format", "out", "seed", "samples", "workers"});
    auto* scan = app.add_subcommand("scan", "|D_i(S)| against i^{3/2}");
    add_common(scan, c, raw, {"seq", "family", "n", "offsets", "format", "out", "seed-bound"});

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    }
    catch (const CLI::CallForAllHelp&) {
        throw HelpRequested(app.help("", CLI::AppFormatMode::All));
    }
    catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    for (auto* sub : app.get_subcommands())
        c.name = sub->get_name();
    validate(c, raw);
    return c;
}

int execute(const Command& c, std::ostream& out, std::ostream& err)
{
    try {
        if (c.name == "compute")
            return do_compute(c, out);
        if (c.name == "construct")
            return do_construct(c, out);
        if (c.name == "minimize")
            return do_minimize(c, out, err);
        if (c.name == "verify")
            return do_verify(c, out, err);
        if (c.name == "scan")
            return do_scan(c, out);
        err << "unknown subcommand " << c.name << '\n';
        return exit_usage;
    }
    catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    }
    catch (const FormatError& e) {
        err << "error: malformed input: " << e.what() << '\n';
        return exit_io;
    }
    catch (const ConvexityError& e) {
        err << "error: " << e.what() << " (pass --allow_nonconvex to accept it)\n";
        return exit_io;
    }
    catch (const RangeError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Command c;
    try {
        c = parse(args);
    }
    catch (const HelpRequested& h) {
        out << h.what();
        return exit_ok;
    }
    catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
    return execute(c, out, err);
}

} // namespace cvxdiff::cli

#include <cvxdiff/constructions.hpp>
#include <cvxdiff/verify.hpp>

#include <omp.h>

#include <algorithm>
#include <exception>
#include <iomanip>
#include <map>
#include <sstream>

namespace cvxdiff {

namespace {

using nlohmann::json;

enum class CheckKind { claim, sum_blocks, incidence };

struct Task
{
    CheckKind kind = CheckKind::claim;
    std::string key;
    std::string family;
    std::size_t n = 0;
    std::string params;
    // sequence source
    std::vector<Rat> values;
    bool nonconvex_ok = false;
    // check argument
    Claim claim = Claim::thm1;
    int i = 0;
};

template <typename T>
T opt(const json& doc, const char* key, T fallback)
{
    if (!doc.contains(key))
        return fallback;
    try {
        return doc.at(key).get<T>();
    }
    catch (const json::exception& e) {
        throw FormatError(std::string("config field '") + key + "': " + e.what());
    }
}

std::pair<int, int> n_range(const json& row)
{
    if (!row.contains("n"))
        throw FormatError("config row needs an 'n' field");
    const auto& n = row.at("n");
    if (n.is_number_integer())
        return {n.get<int>(), n.get<int>()};
    if (n.is_array() && n.size() == 2 && n[0].is_number_integer() && n[1].is_number_integer())
        return {n[0].get<int>(), n[1].get<int>()};
    throw FormatError("'n' must be an integer or a [lo, hi] pair");
}

std::vector<Rat> to_vector(const ConvexSequence& s)
{
    return {s.values().begin(), s.values().end()};
}

// One (label, values) pair per member of the family selected by a row.
std::vector<std::pair<std::string, std::vector<Rat>>> family_members(const json& row)
{
    const auto family = opt<std::string>(row, "family", "");
    std::vector<std::pair<std::string, std::vector<Rat>>> out;
    if (family == "values") {
        if (!row.contains("values"))
            throw FormatError("family 'values' needs a 'values' array");
        std::vector<Rat> v;
        for (const auto& x : row.at("values")) {
            if (x.is_number_integer())
                v.emplace_back(x.get<std::int64_t>());
            else if (x.is_string())
                v.push_back(parse_rat(x.get<std::string>()));
            else
                throw FormatError("values must be integers or \"p/q\" strings");
        }
        out.emplace_back("values", std::move(v));
        return out;
    }
    auto [lo, hi] = n_range(row);
    if (lo > hi)
        return out;
    if (family == "fibonacci") {
        for (int n = lo; n <= hi; ++n)
            out.emplace_back("fibonacci", to_vector(fibonacci_set(n)));
    }
    else if (family == "theorem1") {
        for (int n = lo; n <= hi; ++n)
            out.emplace_back("theorem1", to_vector(d3_extremal_set(n)));
    }
    else if (family == "section32") {
        auto spec = lag236_seed_search(hi, opt<std::int64_t>(row, "seed_bound", 200));
        auto full = recurrence_set(spec);
        for (int n = lo; n <= hi; ++n)
            out.emplace_back("section32", to_vector(full.prefix(static_cast<std::size_t>(n))));
    }
    else if (family == "random" || family == "random2") {
        const int samples = opt<int>(row, "samples", 0);
        const auto seed = opt<std::uint64_t>(row, "seed", 1);
        const auto magnitude = opt<std::int64_t>(row, "magnitude", 100);
        const int k = family == "random" ? 1 : 2;
        for (int t = 0; t < samples; ++t) {
            const int n = lo + t % (hi - lo + 1);
            const std::uint64_t sd = seed * 1000003ULL + static_cast<std::uint64_t>(t);
            out.emplace_back(family + "#" + std::to_string(t), to_vector(random_k_convex(n, magnitude, k, sd)));
        }
    }
    else {
        throw FormatError("unknown family '" + family + "'");
    }
    return out;
}

std::vector<int> i_list(const json& row, std::size_t n, int lo_default)
{
    if (!row.contains("i") || (row.at("i").is_string() && row.at("i").get<std::string>() == "all")) {
        std::vector<int> all;
        for (int i = lo_default; i <= static_cast<int>(n / 2); ++i)
            all.push_back(i);
        return all;
    }
    try {
        return row.at("i").get<std::vector<int>>();
    }
    catch (const json::exception& e) {
        throw FormatError(std::string("config field 'i': ") + e.what());
    }
}

std::vector<Task> expand(const json& config, std::vector<ReportScan>& scans)
{
    if (!config.is_object() || !config.contains("rows") || !config.at("rows").is_array())
        throw FormatError("report config must be an object with a 'rows' array");
    std::vector<Task> tasks;
    int r = 0;
    for (const auto& row : config.at("rows")) {
        const auto check = opt<std::string>(row, "check", "");
        const bool nonconvex_ok = opt<bool>(row, "allow_nonconvex", false);
        const std::string prefix = "r" + std::to_string(r++) + "/";

        if (check == "scan") {
            for (auto& [label, values] : family_members(row)) {
                ReportScan sc;
                sc.key = prefix + label + "/n=" + std::to_string(values.size());
                sc.family = label;
                sc.n = values.size();
                auto s = ConvexSequence::from_values(values);
                sc.rows = growth_scan(s, row.at("i").get<std::vector<int>>(), opt<double>(row, "floor", 0.0));
                for (std::size_t k = 1; k < sc.rows.size(); ++k)
                    if (sc.rows[k].i >= sc.rows[k - 1].i && sc.rows[k].observed < sc.rows[k - 1].observed)
                        sc.monotone = false;
                scans.push_back(std::move(sc));
            }
            continue;
        }

        CheckKind kind;
        if (check == "claim")
            kind = CheckKind::claim;
        else if (check == "sum_blocks")
            kind = CheckKind::sum_blocks;
        else if (check == "incidence")
            kind = CheckKind::incidence;
        else
            throw FormatError("unknown check '" + check + "'");

        for (auto& [label, values] : family_members(row)) {
            Task base;
            base.kind = kind;
            base.family = label;
            base.n = values.size();
            base.values = values;
            base.nonconvex_ok = nonconvex_ok;
            const std::string stem = prefix + label + "/n=" + std::to_string(values.size()) + "/";
            if (kind == CheckKind::claim) {
                for (const auto& name : row.at("claims").get<std::vector<std::string>>()) {
                    Task t = base;
                    t.claim = parse_claim(name);
                    t.key = stem + name;
                    tasks.push_back(std::move(t));
                }
            }
            else {
                for (int i : i_list(row, values.size(), 2)) {
                    Task t = base;
                    t.i = i;
                    t.params = "i=" + std::to_string(i);
                    t.key = stem + (kind == CheckKind::sum_blocks ? "sum_blocks" : "incidence") + "/i=" + std::to_string(i);
                    tasks.push_back(std::move(t));
                }
            }
        }
    }
    return tasks;
}

ReportRow run_task(const Task& t)
{
    ReportRow row;
    row.key = t.key;
    row.family = t.family;
    row.n = t.n;
    row.params = t.params;
    try {
        switch (t.kind) {
        case CheckKind::claim: {
            row.check = "claim";
            row.name = claim_name(t.claim);
            if (!is_convex(t.values) || t.values.size() < 2)
                throw ApplicabilityError("input is not a convex sequence");
            auto bc = check_claim(ConvexSequence::from_values(t.values), t.claim, t.family);
            row.params = "I=" + bc.offsets.to_string();
            row.computed = std::to_string(bc.computed);
            row.bound = format_rat(bc.bound);
            row.pass = bc.pass;
            row.finding = !bc.pass && is_finding_claim(t.claim);
            break;
        }
        case CheckKind::sum_blocks: {
            row.check = "sum_blocks";
            row.name = "sum_blocks";
            if (!t.nonconvex_ok && !is_convex(t.values))
                throw ApplicabilityError("input is not a convex sequence");
            bool ok = sum_blocks_check(t.values, t.i);
            row.computed = ok ? "disjoint" : "overlap";
            row.bound = "disjoint";
            row.pass = ok;
            // disjointness is only promised for convex input
            row.finding = !ok && !is_convex(t.values);
            break;
        }
        case CheckKind::incidence: {
            row.check = "incidence";
            row.name = "incidence";
            if (!is_convex(t.values) || t.values.size() < 2)
                throw ApplicabilityError("input is not a convex sequence");
            auto ic = incidence_check_serial(ConvexSequence::from_values(t.values), t.i);
            row.computed = std::to_string(ic.incidences);
            row.bound = std::to_string(ic.bound);
            row.pass = ic.pass;
            break;
        }
        }
    }
    catch (const ApplicabilityError& e) {
        row.error = e.what();
    }
    catch (const RangeError& e) {
        row.error = e.what();
    }
    return row;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string status_of(const ReportRow& r)
{
    if (r.error)
        return "error";
    if (r.pass)
        return "pass";
    return r.finding ? "finding" : "FAIL";
}

} // namespace

nlohmann::json default_report_config()
{
    return json::parse(R"({
  "rows": [
    {"check": "claim", "claims": ["thm1", "d2_lower", "rem_124", "thm2", "thm3_2convex"], "family": "theorem1", "n": [5, 50]},
    {"check": "claim", "claims": ["rem_1235"], "family": "theorem1", "n": [6, 50]},
    {"check": "claim", "claims": ["d2_lower"], "family": "fibonacci", "n": [3, 40]},
    {"check": "claim", "claims": ["thm1", "thm2", "rem_124", "thm3_2convex"], "family": "fibonacci", "n": [5, 40]},
    {"check": "claim", "claims": ["thm1", "thm2", "rem_124", "d2_lower"], "family": "random", "n": [5, 30], "samples": 500, "seed": 1, "magnitude": 100},
    {"check": "claim", "claims": ["thm3_2convex"], "family": "random2", "n": [5, 30], "samples": 200, "seed": 2, "magnitude": 20},
    {"check": "claim", "claims": ["thm1", "thm2", "rem_124"], "family": "section32", "n": [12, 40]},
    {"check": "sum_blocks", "family": "fibonacci", "n": [8, 40], "i": [2, 3, 4]},
    {"check": "sum_blocks", "family": "theorem1", "n": [8, 50], "i": [2, 3, 4]},
    {"check": "sum_blocks", "family": "section32", "n": [12, 40], "i": [2, 3, 4]},
    {"check": "sum_blocks", "family": "random", "n": [8, 30], "samples": 100, "seed": 3, "magnitude": 50, "i": [2, 3, 4]},
    {"check": "incidence", "family": "theorem1", "n": [5, 40], "i": "all"},
    {"check": "incidence", "family": "fibonacci", "n": [4, 40], "i": "all"},
    {"check": "scan", "family": "theorem1", "n": 64, "i": [1, 4, 9, 16, 25, 36, 49, 63]},
    {"check": "scan", "family": "fibonacci", "n": 40, "i": [1, 4, 9, 16, 25, 36, 39]}
  ]
})");
}

Report run_report(const nlohmann::json& config, int workers)
{
    Report rep;
    std::vector<Task> tasks;
    try {
        tasks = expand(config, rep.scans);
    }
    catch (const json::exception& e) {
        throw FormatError(std::string("report config: ") + e.what());
    }
    rep.rows.resize(tasks.size());
    std::exception_ptr failure;
    const auto total = static_cast<std::int64_t>(tasks.size());

#pragma omp parallel for schedule(dynamic, 4) num_threads(std::max(1, workers))
    for (std::int64_t k = 0; k < total; ++k) {
        try {
            rep.rows[static_cast<std::size_t>(k)] = run_task(tasks[static_cast<std::size_t>(k)]);
        }
        catch (...) {
#pragma omp critical(cvxdiff_report_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);

    for (const auto& r : rep.rows) {
        if (r.error)
            ++rep.errors;
        else if (r.pass)
            ++rep.passed;
        else if (r.finding)
            ++rep.findings;
        else
            ++rep.failed;
    }
    for (const auto& sc : rep.scans) {
        bool floor_ok = std::all_of(sc.rows.begin(), sc.rows.end(), [](const ScanRow& r) { return r.above_floor; });
        if (sc.monotone && floor_ok)
            ++rep.passed;
        else
            ++rep.failed;
    }
    return rep;
}

std::string report_text(const Report& r)
{
    std::ostringstream out;
    out << std::left << std::setw(44) << "check" << std::setw(12) << "computed" << std::setw(12) << "bound"
        << "status\n";
    for (const auto& row : r.rows) {
        out << std::setw(44) << row.key << std::setw(12) << row.computed << std::setw(12) << row.bound
            << status_of(row);
        if (row.error)
            out << "  (" << *row.error << ")";
        out << '\n';
    }
    for (const auto& sc : r.scans) {
        out << "\nscan " << sc.key << (sc.monotone ? "" : "  NOT MONOTONE") << '\n';
        out << "  i  observed  i^1.5     ratio\n";
        for (const auto& s : sc.rows)
            out << "  " << std::setw(3) << s.i << std::setw(10) << s.observed << std::setw(10) << std::fixed
                << std::setprecision(2) << s.reference << std::setprecision(4) << s.ratio << '\n';
    }
    out << "\npassed " << r.passed << ", failed " << r.failed << ", findings " << r.findings << ", errors "
        << r.errors << " -> " << (r.ok() ? "PASS" : "FAIL") << '\n';
    return out.str();
}

std::string report_csv(const Report& r)
{
    std::ostringstream out;
    out << "key,check,claim,family,n,parameters,computed,bound,pass,status\n";
    for (const auto& row : r.rows)
        out << csv_field(row.key) << ',' << row.check << ',' << row.name << ',' << csv_field(row.family) << ','
            << row.n << ',' << csv_field(row.params) << ',' << csv_field(row.computed) << ','
            << csv_field(row.bound) << ',' << (row.pass ? "true" : "false") << ',' << status_of(row) << '\n';
    return out.str();
}

nlohmann::json report_json(const Report& r)
{
    json rows = json::array();
    for (const auto& row : r.rows) {
        json j{{"key", row.key},           {"check", row.check}, {"claim", row.name},
               {"family", row.family},     {"n", row.n},         {"parameters", row.params},
               {"computed", row.computed}, {"bound", row.bound}, {"pass", row.pass},
               {"status", status_of(row)}};
        if (row.error)
            j["error"] = *row.error;
        rows.push_back(std::move(j));
    }
    json scans = json::array();
    for (const auto& sc : r.scans) {
        json srows = json::array();
        for (const auto& s : sc.rows)
            srows.push_back({{"i", s.i}, {"observed", s.observed}, {"reference", s.reference}, {"ratio", s.ratio}});
        scans.push_back({{"key", sc.key}, {"n", sc.n}, {"monotone", sc.monotone}, {"rows", std::move(srows)}});
    }
    return json{{"summary",
                 {{"passed", r.passed}, {"failed", r.failed}, {"findings", r.findings}, {"errors", r.errors},
                  {"ok", r.ok()}}},
                {"rows", std::move(rows)},
                {"scans", std::move(scans)}};
}

std::string scan_csv(const std::vector<ScanRow>& rows)
{
    std::ostringstream out;
    out << "i,observed,reference,ratio\n";
    out << std::setprecision(10);
    for (const auto& r : rows)
        out << r.i << ',' << r.observed << ',' << r.reference << ',' << r.ratio << '\n';
    return out.str();
}

} // namespace cvxdiff

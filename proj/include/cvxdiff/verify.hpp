#pragma once

#include <cvxdiff/sequence.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvxdiff {

/// A check was asked of an input it does not apply to.
class ApplicabilityError : public std::invalid_argument
{
  public:
    explicit ApplicabilityError(const std::string& what) : std::invalid_argument(what) {}
};

enum class Claim { thm1, thm2, thm3_2convex, rem_124, rem_1235, d2_lower };

/// "thm1", "thm2", ... Throws FormatError on unknown names.
Claim parse_claim(const std::string& name);
std::string claim_name(Claim c);

/// Claims whose failure is logged as a finding rather than a defect.
bool is_finding_claim(Claim c);

struct BoundCheck
{
    Claim claim = Claim::thm1;
    std::string input;
    std::size_t n = 0;
    OffsetSet offsets = OffsetSet::upto(1);
    int computed = 0;
    /// Exact lower bound; the check is computed >= ceil(bound).
    Rat bound;
    bool pass = false;
};

/// Throws ApplicabilityError when n is too small for the claim's offsets or
/// (for thm3_2convex) the sequence is not two-convex.
BoundCheck check_claim(const ConvexSequence& s, Claim claim, const std::string& input = "");

struct ScanRow
{
    int i = 0;
    int observed = 0;
    double reference = 0; // i^{3/2}
    double ratio = 0;
    bool above_floor = true;
};

/// |D_i(S)| for each i. Throws RangeError when some i is outside [1, n-1].
std::vector<ScanRow> growth_scan(const ConvexSequence& s, const std::vector<int>& i_values, double floor = 0.0);

/// Splits the values into floor(n/i) consecutive blocks of i elements and
/// reports whether the block sumsets B+B are pairwise disjoint. Raw values
/// so that non-convex input can be probed. Throws ApplicabilityError unless
/// i >= 2 and n >= 2i.
bool sum_blocks_check(std::span<const Rat> values, int i);

struct IncidenceCount
{
    std::int64_t incidences = 0;
    std::int64_t bound = 0;
    bool pass = false;
};

/// Points {-n..n} x D_i(S), curves (j, h) for 1 <= j <= n, 1 <= h <= n/2.
/// (x, v) lies on (j, h) when 1 <= x + j <= n and v = s_{x+j} - s_h.
/// Throws ApplicabilityError unless 2 <= i <= n/2.
IncidenceCount incidence_check(const ConvexSequence& s, int i, int workers = 1);
IncidenceCount incidence_check_serial(const ConvexSequence& s, int i);

/// n * sum_{h=1}^{n/2} min(i, n - h).
std::int64_t incidence_floor(std::size_t n, int i);

struct ReportRow
{
    std::string key;
    std::string check; // claim | sum_blocks | incidence | scan
    std::string name;  // claim name or check name
    std::string family;
    std::size_t n = 0;
    std::string params;
    std::string computed;
    std::string bound;
    bool pass = false;
    bool finding = false;
    std::optional<std::string> error;
};

struct ReportScan
{
    std::string key;
    std::string family;
    std::size_t n = 0;
    std::vector<ScanRow> rows;
    bool monotone = true;
};

struct Report
{
    std::vector<ReportRow> rows;
    std::vector<ReportScan> scans;
    int passed = 0;
    int failed = 0;
    int findings = 0;
    int errors = 0;

    bool ok() const { return failed == 0; }
};

/// Built-in configuration covering every claim, construction and check.
nlohmann::json default_report_config();

/// Runs the configured checks. Per-row applicability problems become error
/// rows; malformed configuration throws FormatError.
Report run_report(const nlohmann::json& config, int workers = 1);

std::string report_text(const Report& r);
std::string report_csv(const Report& r);
nlohmann::json report_json(const Report& r);
std::string scan_csv(const std::vector<ScanRow>& rows);

} // namespace cvxdiff

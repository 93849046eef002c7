#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hyperseq/curvetrace.hpp"
#include "hyperseq/numroots.hpp"
#include "hyperseq/recurrence.hpp"
#include "hyperseq/sequence_spec.hpp"
#include "hyperseq/spectral.hpp"

namespace hyperseq::cli {

struct FigureStyle {
    double circle_radius = 3.0;  // px
    double dot_radius = 3.5;     // px
    double stroke_width = 1.0;   // px
    int width = 800;             // px; height follows the grid aspect ratio
};

struct RunConfig {
    std::optional<int> k;
    std::optional<RatPoly> a;
    std::optional<RatPoly> b;
    std::optional<long> n;
    long n_max = 200;
    GridSpec grid;
    double tol = kDefaultCurveTol;
    double tau_real = kDefaultTauReal;
    std::optional<std::string> out;
    CharForm form = CharForm::PaperLiteral;
    FigureStyle style;

    /// Throws ParseError when k, A or B is missing, InvalidSpec when the
    /// triple is rejected.
    [[nodiscard]] SequenceSpec spec() const;
    /// Throws ParseError when n is missing or n < 1.
    [[nodiscard]] long require_n() const;
    /// Canonical one-line rendering of every field, used for the SVG hash.
    [[nodiscard]] std::string canonical() const;
};

/// Sets one field from its textual value. Keys use `_` or `-` freely
/// (`n_max`, `n-max`). Throws ParseError with a message naming the key.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Parses `key = value` lines; `#` starts a comment. Errors are reported as
/// ParseError("<origin>:<line>: <message>").
RunConfig parse_config(std::string_view text, const std::string& origin = "config");
RunConfig load_config(const std::filesystem::path& path);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

/// %.17g.
std::string format_double(double x);

inline constexpr std::string_view kZerosCsvHeader = "n,index,re,im,residual,cluster_size,is_real,im_f,re_f_signed,flags";

std::string zeros_csv(long n, const std::vector<ZeroRecord>& zeros);
std::string curve_csv(const std::vector<CurveSegment>& segments);
std::string endpoints_csv(const EndpointLocus& locus);
std::string gen_csv(const RatPoly& pn);
std::string gen_json(const SequenceSpec& spec, long n, const RatPoly& pn);
std::string scan_json(const SequenceSpec& spec, long n_max, const ScanResult& result);

/// Curve runs in Gamma as black paths, the rest of the traced curve in grey,
/// zeros as unfilled circles and endpoints as filled black dots, y axis up.
std::string figure_svg(const RunConfig& config, const std::vector<CurveSegment>& segments,
                       const std::vector<ZeroRecord>& zeros, const EndpointLocus& locus);

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Cross-module invariants on one spec. The zeros check runs only when the
/// config carries n.
std::vector<VerifyCheck> verify_spec(const RunConfig& config);
std::string verify_table(const std::vector<VerifyCheck>& checks);
/// 0 iff every check passed.
int verify_exit_status(const std::vector<VerifyCheck>& checks);

/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

enum ExitStatus : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitUsage = 2,
    kExitFailure = 3,
};

/// Entry point of the command-line tool.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperseq::cli

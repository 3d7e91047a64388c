#pragma once

// Grid sweeps of every claim: pointwise margins, consecutive-point
// monotonicity, exact rational residuals and the series sign tools.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ellik/bounds.hpp"
#include "ellik/real.hpp"

namespace ellik {

enum class Spacing { Uniform, LogEndpointRefined };

const char* to_string(Spacing s);
Spacing parse_spacing(const std::string& name);

struct GridSpec {
    double lo = 1e-6;
    double hi = 1.0 - 1e-6;
    std::size_t points = 10000;
    Spacing spacing = Spacing::LogEndpointRefined;

    /// Throws DomainError unless 0 < lo < hi < 1 and points >= 2.
    void validate() const;

    /// Sorted sample points. The refined spacing adds 100 points per decade
    /// at distances 1e-3 .. 1e-12 from 0 (when lo <= 1e-3) and from 1 (when
    /// hi >= 1 - 1e-3); points closer than 1e-6 of their distance to the
    /// nearer endpoint are merged.
    std::vector<double> samples() const;
};

/// Distance to the nearer endpoint below which sweeps switch to
/// double-double.
inline constexpr double kExtendedZone = 1e-3;

enum class Status { Pass, Fail, Indeterminate };

const char* to_string(Status s);

struct VerificationReport {
    std::string claim_id;
    GridSpec grid;
    double worst_margin = 0.0;
    double worst_point = 0.0;
    Status status = Status::Pass;
    std::string notes;
    Precision precision = Precision::Double;
    double runtime_ms = 0.0;
};

struct VerifyOptions {
    Precision precision = Precision::Double;
    /// Constant c of Q1 for the concavity claims.
    LogConstant<DoubleDouble> c = LogConstant<DoubleDouble>::sharp();
    /// 0 means hardware concurrency, capped by ELLIK_THREADS.
    unsigned threads = 0;
};

struct ClaimInfo {
    std::string id;
    std::string suite;
    std::string description;
};

const std::vector<ClaimInfo>& claim_registry();
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown claim.
VerificationReport verify(const std::string& claim_id, const GridSpec& grid, const VerifyOptions& options = {});

/// Runs every claim of `suite` ("all" for every suite) in registry order.
std::vector<VerificationReport> verify_suite(const std::string& suite, const GridSpec& grid,
                                             const VerifyOptions& options = {});

/// Worker count: options.threads (or hardware concurrency) capped by the
/// ELLIK_THREADS environment variable.
unsigned worker_count(unsigned requested = 0);

/// Runs body(i) for i in [0, n) on worker_count(threads) threads in
/// contiguous chunks. The first exception thrown by a worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads = 0);

}  // namespace ellik

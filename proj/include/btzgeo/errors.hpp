#ifndef BTZGEO_ERRORS_HPP
#define BTZGEO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace btz {

struct OffQuadricError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonAchronalInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EmptySpec : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegenerateSpec : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NoDominantDirection : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BallTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LiftFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ChartDomain : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct StepTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NoStraddle : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScenarioParseError : std::runtime_error {
    int line = 0;
    int column = 0;
    ScenarioParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg), line(l), column(c) {}
};

struct ScenarioValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace btz

#endif

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace firedes {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed KEEL content; carries the 1-based line number when known.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what), line(0) {}
    ParseError(std::size_t line_no, const std::string& what)
        : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
    std::size_t line;
};

// More than two classes in the data.
struct UnsupportedProblemError : Error {
    using Error::Error;
};

// A class is missing entirely (single-class dataset, empty class, ...).
struct DegenerateDatasetError : Error {
    using Error::Error;
};

// A class has fewer samples than the requested fold count.
struct StratificationError : Error {
    using Error::Error;
};

// Pre-partitioned fold files do not reassemble into one dataset.
struct InconsistentFoldsError : Error {
    using Error::Error;
};

// Empty or single-class training input.
struct EmptyTrainingSetError : Error {
    using Error::Error;
};

// Too many degenerate bootstrap draws in a row.
struct BootstrapError : Error {
    using Error::Error;
};

// Probability calibration requires both classes.
struct CalibrationError : Error {
    using Error::Error;
};

// Feature-vector dimension mismatch.
struct ShapeError : Error {
    using Error::Error;
};

// Not enough samples for a neighborhood query or edit.
struct InsufficientDataError : Error {
    using Error::Error;
};

// A class required for an equality neighborhood is absent.
struct MissingClassError : Error {
    using Error::Error;
};

// AUC is undefined when only one class is present.
struct UndefinedAucError : Error {
    using Error::Error;
};

// Fewer than the minimum nonzero differences for a signed-rank test.
struct InsufficientPairsError : Error {
    using Error::Error;
};

// A result matrix has missing cells where a complete one is required.
struct IncompleteMatrixError : Error {
    using Error::Error;
};

}  // namespace firedes

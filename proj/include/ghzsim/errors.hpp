#pragma once

#include <stdexcept>
#include <string>

namespace ghzsim {

// Base for all library errors. what() is always "<Name>: <detail>" so the
// CLI can surface the error name on stderr.
class Error : public std::runtime_error {
public:
    Error(const std::string& name, const std::string& detail)
        : std::runtime_error(name + ": " + detail), name_(name) {}

    const std::string& name() const { return name_; }

private:
    std::string name_;
};

#define GHZSIM_DEFINE_ERROR(Name)                                            \
    struct Name : Error {                                                    \
        explicit Name(const std::string& detail) : Error(#Name, detail) {}   \
    }

// numerics
GHZSIM_DEFINE_ERROR(NotHermitian);
GHZSIM_DEFINE_ERROR(NoConvergence);
GHZSIM_DEFINE_ERROR(NotPSD);
GHZSIM_DEFINE_ERROR(BadSubset);
GHZSIM_DEFINE_ERROR(DimMismatch);

// model / dynamics
GHZSIM_DEFINE_ERROR(UnknownLabel);
GHZSIM_DEFINE_ERROR(StepTooLarge);

// effective
GHZSIM_DEFINE_ERROR(DuplicateLabel);
GHZSIM_DEFINE_ERROR(DegenerateDenominator);
GHZSIM_DEFINE_ERROR(NonpositiveJ);
GHZSIM_DEFINE_ERROR(NonpositiveInput);

// spectrum
GHZSIM_DEFINE_ERROR(PeakNotFound);

// cli
GHZSIM_DEFINE_ERROR(ValidationError);
GHZSIM_DEFINE_ERROR(MissingArtifact);

#undef GHZSIM_DEFINE_ERROR

// ParseError carries the offending line (1-based, 0 = not line specific)
// and the field/key being parsed.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& field, const std::string& detail)
        : Error("ParseError",
                "line " + std::to_string(line) +
                    (field.empty() ? "" : ", field '" + field + "'") + ": " + detail),
          line_(line),
          field_(field) {}

    int line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    int line_;
    std::string field_;
};

}  // namespace ghzsim

#pragma once

#include <stdexcept>
#include <string>

namespace dmtopo {

struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotHermitian : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveSpectrum : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotTranslationInvariant : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPTForm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoCommonAxis : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AllImaginaryPartsZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DefectiveBlock : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpectrumOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoBracket : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dmtopo

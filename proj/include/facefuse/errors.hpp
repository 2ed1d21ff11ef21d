#pragma once

#include <stdexcept>
#include <string>

namespace facefuse {

// Error categories map onto CLI exit codes: usage -> 1, data -> 2, numeric -> 3.
enum class ErrorKind { usage, data, numeric };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// --- usage errors ---

struct InvalidDimensions : Error {
    explicit InvalidDimensions(const std::string& m) : Error(ErrorKind::usage, m) {}
};

struct InvalidWeights : Error {
    explicit InvalidWeights(const std::string& m) : Error(ErrorKind::usage, m) {}
};

struct InvalidArchitecture : Error {
    explicit InvalidArchitecture(const std::string& m) : Error(ErrorKind::usage, m) {}
};

struct InvalidHyperparameters : Error {
    explicit InvalidHyperparameters(const std::string& m) : Error(ErrorKind::usage, m) {}
};

struct InvalidParameters : Error {
    explicit InvalidParameters(const std::string& m) : Error(ErrorKind::usage, m) {}
};

struct KOutOfRange : Error {
    explicit KOutOfRange(const std::string& m) : Error(ErrorKind::usage, m) {}
};

// --- data errors ---

struct FileNotFound : Error {
    explicit FileNotFound(const std::string& m) : Error(ErrorKind::data, m) {}
};

struct MalformedImage : Error {
    explicit MalformedImage(const std::string& m) : Error(ErrorKind::data, m) {}
};

struct MalformedManifest : Error {
    explicit MalformedManifest(const std::string& m) : Error(ErrorKind::data, m) {}
};

struct IoFailure : Error {
    explicit IoFailure(const std::string& m) : Error(ErrorKind::data, m) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& m) : Error(ErrorKind::data, m) {}
};

struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& m) : Error(ErrorKind::data, m) {}
};

struct EmptyTrainingSet : Error {
    explicit EmptyTrainingSet(const std::string& m) : Error(ErrorKind::data, m) {}
};

struct EmptyDataset : Error {
    explicit EmptyDataset(const std::string& m) : Error(ErrorKind::data, m) {}
};

struct InsufficientData : Error {
    explicit InsufficientData(const std::string& m) : Error(ErrorKind::data, m) {}
};

struct VersionMismatch : Error {
    explicit VersionMismatch(const std::string& m) : Error(ErrorKind::data, m) {}
};

struct CorruptModel : Error {
    explicit CorruptModel(const std::string& m) : Error(ErrorKind::data, m) {}
};

// --- numeric errors ---

struct NotSymmetric : Error {
    explicit NotSymmetric(const std::string& m) : Error(ErrorKind::numeric, m) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& m) : Error(ErrorKind::numeric, m) {}
};

struct DegenerateTrainingSet : Error {
    explicit DegenerateTrainingSet(const std::string& m) : Error(ErrorKind::numeric, m) {}
};

} // namespace facefuse

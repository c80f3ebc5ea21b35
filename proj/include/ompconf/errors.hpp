// Exception hierarchy. Each module throws its own subclass so the CLI can map
// failures onto stable exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace ompconf {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CorpusError : public Error {
public:
    enum class Kind { MissingCorpusRoot, SymlinkCycle, UnreadableSource };

    CorpusError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

class ConfigError : public Error {
public:
    enum class Kind { ConfigNotFound, ConfigSyntax, ConfigSemantic };

    ConfigError(Kind kind, const std::string& message, int line = 0, int column = 0)
        : Error(message), kind_(kind), line_(line), column_(column) {}

    Kind kind() const { return kind_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    Kind kind_;
    int line_;
    int column_;
};

class ProbeFailed : public Error {
public:
    using Error::Error;
};

class NoTemplate : public Error {
public:
    using Error::Error;
};

class ResultParseError : public Error {
public:
    enum class Kind { JsonSyntax, SchemaViolation, BadEnumValue, MalformedTimestamp };

    ResultParseError(Kind kind, std::string key, const std::string& message)
        : Error(message), kind_(kind), key_(std::move(key)) {}

    Kind kind() const { return kind_; }
    // Offending JSON key, empty for syntax errors.
    const std::string& key() const { return key_; }

private:
    Kind kind_;
    std::string key_;
};

class MalformedTimestamp : public Error {
public:
    using Error::Error;
};

class AnalysisError : public Error {
public:
    enum class Kind { MixedFamilies, DuplicateVersion, DuplicateRecord, TooFewVersions, DuplicateFeatureKey };

    AnalysisError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

}  // namespace ompconf

#pragma once

#include <stdexcept>
#include <string>

namespace trapdoor {

// Malformed input: bad JSON/LP syntax, schema mismatches, corrupted bit
// strings.  The CLI maps this (and bad flags) to exit code 2.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// A solve stage failed (untrusted instance did not behave as promised).
// Carries the stage name so callers can report where the pipeline stopped.
class SolveError : public std::runtime_error {
public:
    SolveError(std::string stage_name, const std::string& what)
        : std::runtime_error(stage_name + ": " + what), stage_(std::move(stage_name)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

// A produced solution failed independent verification.  CLI exit code 1.
class VerifyFailure : public std::runtime_error {
public:
    explicit VerifyFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace trapdoor

#pragma once

#include <stdexcept>
#include <string>

namespace bestshot {

// Invalid caller input: bad arguments, malformed files, violated invariants.
// The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A multi-step pipeline failed mid-run (e.g. captioner retries exhausted).
// The CLI maps this to exit code 3.
class PipelineError : public std::runtime_error {
public:
    explicit PipelineError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bestshot

#pragma once

#include <stdexcept>
#include <string>

namespace flipk {

// malformed expression / matrix / document; message names the offending token
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// structurally valid input the engine refuses (e.g. infinite atom fed to a resolution)
struct UnsupportedInputError : std::runtime_error {
    explicit UnsupportedInputError(const std::string& what) : std::runtime_error(what) {}
};

// configured cap exceeded: presentation size, colimit stage budget, factor bound
struct ResourceLimitError : std::runtime_error {
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

// colimit gave up without an answer; deliberately a resource condition, never a wrong value
struct InconclusiveColimitError : ResourceLimitError {
    explicit InconclusiveColimitError(const std::string& what) : ResourceLimitError(what) {}
};

// a diagram chase or solve failed where exactness guarantees success: always a bug
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace flipk

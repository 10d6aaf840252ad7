#pragma once

#include <stdexcept>
#include <string>

namespace qcl {

// Every failure carries a short machine-readable kind (e.g. "PoleAtParameter")
// next to the human message, so the CLI can emit a failure record.
class error : public std::runtime_error {
public:
    error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& what) {
    throw error(kind, what);
}

}  // namespace qcl

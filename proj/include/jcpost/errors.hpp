#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace jcpost {

// Base for all library errors. `kind()` is a stable machine-readable tag that
// the CLI surfaces in its error records.
class error : public std::runtime_error {
public:
    error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

struct invalid_input_error : error {
    explicit invalid_input_error(const std::string& what) : error("invalid-input", what) {}
};

struct out_of_range_error : error {
    explicit out_of_range_error(const std::string& what) : error("out-of-range", what) {}
};

struct degenerate_state_error : error {
    explicit degenerate_state_error(const std::string& what) : error("degenerate-state", what) {}
};

struct impossible_postselection_error : error {
    explicit impossible_postselection_error(const std::string& what)
        : error("impossible-postselection", what) {}
};

struct degenerate_grid_error : error {
    explicit degenerate_grid_error(const std::string& what) : error("degenerate-grid", what) {}
};

struct io_error : error {
    explicit io_error(const std::string& what) : error("io", what) {}
};

}  // namespace jcpost

#pragma once

#include "pqc/error.hpp"

#include <string>

namespace pqc::testing {

/// Code of the Error thrown by `f`, or "" when it returns normally.
template <typename F>
std::string error_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

} // namespace pqc::testing

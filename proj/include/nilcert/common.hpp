#pragma once

#include <stdexcept>
#include <string>

namespace nilcert {

/* Domain error: invalid inputs, violated preconditions, inconsistent data.
 * Search exhaustion is NOT an error; exhaustible searches return status objects. */
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw error(msg);
}

/* An enumeration or search budget was exceeded before a decision was
 * reached.  Distinguished from `error` so callers can report "resource
 * limit" separately from "bad input". */
class budget_error : public error {
public:
    explicit budget_error(const std::string& what) : error(what) {}
};

inline void require_budget(bool cond, const std::string& msg) {
    if (!cond) throw budget_error(msg);
}

} // namespace nilcert

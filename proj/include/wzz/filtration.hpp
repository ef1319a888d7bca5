#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wzz/simplex.hpp"

namespace wzz {

enum class Op : char { Insert = 'i', Delete = 'd' };

struct FiltrationStep {
    Op op;
    Simplex simplex;

    friend bool operator==(const FiltrationStep&, const FiltrationStep&) = default;
};

/// A simplex-wise zigzag filtration starting from the empty complex.
/// Arrow i maps K_i to K_{i+1}; complexes are indexed 0..m.
class ZigzagFiltration {
public:
    ZigzagFiltration() = default;
    explicit ZigzagFiltration(std::vector<FiltrationStep> steps) : steps_(std::move(steps)) {}

    std::size_t length() const { return steps_.size(); }
    const FiltrationStep& operator[](std::size_t i) const { return steps_[i]; }
    const std::vector<FiltrationStep>& steps() const { return steps_; }

    bool forward(std::size_t arrow) const { return steps_[arrow].op == Op::Insert; }

    void insert(Simplex s) { steps_.push_back({Op::Insert, std::move(s)}); }
    void remove(Simplex s) { steps_.push_back({Op::Delete, std::move(s)}); }
    void append(const ZigzagFiltration& other);

    friend bool operator==(const ZigzagFiltration&, const ZigzagFiltration&) = default;

private:
    std::vector<FiltrationStep> steps_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Raised when a filtration does not describe a legal sequence of complexes.
class FiltrationError : public std::runtime_error {
public:
    FiltrationError(std::size_t arrow, const std::string& reason)
        : std::runtime_error("arrow " + std::to_string(arrow) + ": " + reason),
          arrow_(arrow), reason_(reason) {}
    std::size_t arrow() const { return arrow_; }
    const std::string& reason() const { return reason_; }

private:
    std::size_t arrow_;
    std::string reason_;
};

ZigzagFiltration parse_filtration(std::istream& in);
ZigzagFiltration parse_filtration(std::string_view text);

std::string serialize(const ZigzagFiltration& f);

struct ValidationReport {
    std::optional<FiltrationError> error;
    std::size_t m = 0;  ///< number of arrows
    std::size_t n = 0;  ///< largest complex size seen during replay (up to the error, if any)

    bool ok() const { return !error.has_value(); }
};

ValidationReport validate(const ZigzagFiltration& f);

/// Throws FiltrationError if f is not valid.
void require_valid(const ZigzagFiltration& f);

/// Replays f up to complex index j (0 <= j <= m). Throws std::out_of_range for
/// a bad index and FiltrationError if the prefix is illegal.
ComplexState complex_at(const ZigzagFiltration& f, std::size_t j);

/// Applies arrow i of f to state (which must be K_i).
void apply_step(const ZigzagFiltration& f, std::size_t i, ComplexState& state);

}  // namespace wzz

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "srtsel/params.hpp"

// Selection-constant tables and the runtime digit selection they drive.
// Row k holds the integer thresholds s_{1,k} < ... < s_{a,k}; digit d is
// selected at divisor index k while the truncated shifted remainder is at
// least s_{d,k} (in units of 2^-t) and below s_{d+1,k}.

namespace srtsel {

struct SelectionTable {
    RadixConfig cfg;
    int u = 0;
    int t = 0;
    // rows[k - 2^{u-1}][d - 1] = s_{d,k}
    std::vector<std::vector<std::int64_t>> rows;

    std::int64_t k_begin() const { return std::int64_t{1} << (u - 1); }
    std::int64_t k_end() const { return std::int64_t{1} << u; }

    std::int64_t threshold(std::int64_t k, std::int64_t d) const {
        return rows[static_cast<std::size_t>(k - k_begin())][static_cast<std::size_t>(d - 1)];
    }

    // Largest truncated-remainder index whose cell still meets the reachable
    // wedge |beta r| <= (a + rho) y over divisor interval k:
    // floor((a + rho)(k + 1) 2^{t-u}).
    std::int64_t s_max(std::int64_t k) const;

    friend bool operator==(const SelectionTable& x, const SelectionTable& y) {
        return x.cfg == y.cfg && x.u == y.u && x.t == y.t && x.rows == y.rows;
    }
};

// s_{d,k} = ceil(2^{t-u} (d - rho)(k + 1)) for every digit and divisor index.
// Throws std::domain_error unless the engine accepts (u, t); pass
// allow_unverified to build a table for a rejected pair (the verifier can
// then refute it).
SelectionTable build_table(const RadixConfig& cfg, int u, int t, bool allow_unverified = false);

struct TruncatedOperands {
    std::int64_t k = 0;        // divisor index, y_hat = k 2^-u
    std::int64_t s_trunc = 0;  // truncated shifted remainder, value s_trunc 2^-t
};

// Sign-magnitude selection: for s_trunc >= 0 the largest d with
// s_trunc >= s_{d,k} (s_{0,k} = 0), for s_trunc < 0 the negated selection of
// the magnitude. Throws std::out_of_range for k outside the table or
// |s_trunc| beyond s_max(k).
std::int64_t select_digit(const SelectionTable& table, const TruncatedOperands& ops);

enum class TableFormat { json, csv, text };

TableFormat parse_table_format(const std::string& name);

std::string emit_table(const SelectionTable& table, TableFormat format);

// Parses the JSON interchange form. Throws std::runtime_error on anything
// malformed: bad JSON, schema violations, incomplete or out-of-order rows,
// negative thresholds.
SelectionTable parse_table_json(const std::string& text);

}  // namespace srtsel

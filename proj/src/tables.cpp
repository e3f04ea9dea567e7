#include "srtsel/tables.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "srtsel/engine.hpp"

namespace srtsel {

std::int64_t SelectionTable::s_max(std::int64_t k) const {
    // (a + rho)(k + 1) 2^{t-u} = a beta (k + 1) 2^t / ((beta - 1) 2^u)
    Int128 num = checked_mul(checked_mul(static_cast<Int128>(cfg.a * cfg.beta), static_cast<Int128>(k + 1)),
                             t >= u ? pow2_128(t - u) : 1);
    Int128 den = checked_mul(static_cast<Int128>(cfg.beta - 1), t >= u ? 1 : pow2_128(u - t));
    return static_cast<std::int64_t>(floor_div(num, den));
}

SelectionTable build_table(const RadixConfig& cfg, int u, int t, bool allow_unverified) {
    if (u < 2 || t < 2) throw std::domain_error("truncation parameters must satisfy u >= 2, t >= 2");
    if (u > 24 || t > 24 || (cfg.a << (u - 1)) > (std::int64_t{1} << 25))
        throw std::invalid_argument("table with u=" + std::to_string(u) + ", t=" + std::to_string(t) +
                                    " would be unreasonably large");
    if (!allow_unverified && !pair_accepted(cfg, u, t))
        throw std::domain_error("(u=" + std::to_string(u) + ", t=" + std::to_string(t) +
                                ") is not a valid truncation pair for beta=" + std::to_string(cfg.beta) +
                                " a=" + std::to_string(cfg.a));

    SelectionTable table;
    table.cfg = cfg;
    table.u = u;
    table.t = t;
    table.rows.resize(static_cast<std::size_t>(table.k_end() - table.k_begin()));

    Int128 scale = t >= u ? pow2_128(t - u) : 1;
    Int128 den = checked_mul(static_cast<Int128>(cfg.beta - 1), t >= u ? 1 : pow2_128(u - t));
    for (std::int64_t k = table.k_begin(); k < table.k_end(); ++k) {
        auto& row = table.rows[static_cast<std::size_t>(k - table.k_begin())];
        row.reserve(static_cast<std::size_t>(cfg.a));
        for (std::int64_t d = 1; d <= cfg.a; ++d) {
            // ceil(2^{t-u} (d - rho)(k+1)) over the common denominator
            Int128 num = checked_mul(checked_mul(static_cast<Int128>(d * (cfg.beta - 1) - cfg.a), scale),
                                     static_cast<Int128>(k + 1));
            row.push_back(static_cast<std::int64_t>(ceil_div(num, den)));
        }
    }
    return table;
}

std::int64_t select_digit(const SelectionTable& table, const TruncatedOperands& ops) {
    if (ops.k < table.k_begin() || ops.k >= table.k_end())
        throw std::out_of_range("divisor index k=" + std::to_string(ops.k) + " outside table");
    std::int64_t mag = ops.s_trunc < 0 ? -ops.s_trunc : ops.s_trunc;
    if (mag > table.s_max(ops.k))
        throw std::out_of_range("remainder index " + std::to_string(ops.s_trunc) +
                                " beyond reachable range at k=" + std::to_string(ops.k));
    // Largest d with mag >= s_{d,k}; scanned from the top so the answer is
    // right even for hand-edited tables with unsorted thresholds.
    const auto& row = table.rows[static_cast<std::size_t>(ops.k - table.k_begin())];
    std::int64_t d = table.cfg.a;
    while (d >= 1 && mag < row[static_cast<std::size_t>(d - 1)]) --d;
    return ops.s_trunc < 0 ? -d : d;
}

TableFormat parse_table_format(const std::string& name) {
    if (name == "json") return TableFormat::json;
    if (name == "csv") return TableFormat::csv;
    if (name == "text") return TableFormat::text;
    throw std::invalid_argument("unknown format '" + name + "' (expected json, csv or text)");
}

namespace {

std::string emit_json(const SelectionTable& table) {
    nlohmann::json j;
    j["beta"] = table.cfg.beta;
    j["a"] = table.cfg.a;
    j["u"] = table.u;
    j["t"] = table.t;
    j["rows"] = nlohmann::json::array();
    for (std::int64_t k = table.k_begin(); k < table.k_end(); ++k) {
        nlohmann::json row;
        row["k"] = k;
        row["s"] = table.rows[static_cast<std::size_t>(k - table.k_begin())];
        j["rows"].push_back(std::move(row));
    }
    return j.dump(2) + "\n";
}

std::string emit_csv(const SelectionTable& table) {
    std::ostringstream out;
    out << "k";
    for (std::int64_t d = 1; d <= table.cfg.a; ++d) out << ",s_" << d;
    out << "\n";
    for (std::int64_t k = table.k_begin(); k < table.k_end(); ++k) {
        out << k;
        for (std::int64_t d = 1; d <= table.cfg.a; ++d) out << "," << table.threshold(k, d);
        out << "\n";
    }
    return out.str();
}

std::string emit_text(const SelectionTable& table) {
    std::ostringstream out;
    out << "beta=" << table.cfg.beta << " a=" << table.cfg.a << " u=" << table.u
        << " t=" << table.t << "  (thresholds s_{d,k}, digit d selected while s >= s_d)\n";
    std::size_t width = 6;
    out << std::setw(static_cast<int>(width)) << "k";
    for (std::int64_t d = 1; d <= table.cfg.a; ++d)
        out << std::setw(static_cast<int>(width)) << ("s_" + std::to_string(d));
    out << "\n";
    for (std::int64_t k = table.k_begin(); k < table.k_end(); ++k) {
        out << std::setw(static_cast<int>(width)) << k;
        for (std::int64_t d = 1; d <= table.cfg.a; ++d)
            out << std::setw(static_cast<int>(width)) << table.threshold(k, d);
        out << "\n";
    }
    return out.str();
}

}  // namespace

std::string emit_table(const SelectionTable& table, TableFormat format) {
    switch (format) {
        case TableFormat::json: return emit_json(table);
        case TableFormat::csv: return emit_csv(table);
        case TableFormat::text: return emit_text(table);
    }
    throw std::logic_error("unreachable");
}

SelectionTable parse_table_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("table file is not valid JSON: ") + e.what());
    }
    try {
        SelectionTable table;
        table.cfg = make_config(j.at("beta").get<std::int64_t>(), j.at("a").get<std::int64_t>());
        table.u = j.at("u").get<int>();
        table.t = j.at("t").get<int>();
        if (table.u < 2 || table.u > 24 || table.t < 2 || table.t > 24 ||
            (table.cfg.a << (table.u - 1)) > (std::int64_t{1} << 25))
            throw std::runtime_error("u/t out of range");
        const auto& rows = j.at("rows");
        if (!rows.is_array() || rows.size() != static_cast<std::size_t>(table.k_end() - table.k_begin()))
            throw std::runtime_error("rows must cover exactly k in [2^{u-1}, 2^u)");
        table.rows.resize(rows.size());
        std::int64_t expect_k = table.k_begin();
        for (const auto& row : rows) {
            if (row.at("k").get<std::int64_t>() != expect_k)
                throw std::runtime_error("rows must be sorted by k with no gaps");
            auto s = row.at("s").get<std::vector<std::int64_t>>();
            if (s.size() != static_cast<std::size_t>(table.cfg.a))
                throw std::runtime_error("each row needs exactly a thresholds");
            if (!s.empty() && s.front() < 0) throw std::runtime_error("thresholds must be nonnegative");
            table.rows[static_cast<std::size_t>(expect_k - table.k_begin())] = std::move(s);
            ++expect_k;
        }
        return table;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("table file does not match the schema: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("table file carries an invalid config: ") + e.what());
    }
}

}  // namespace srtsel

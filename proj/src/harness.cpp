#include "cornerlayer/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <thread>

#include "cornerlayer/interp.hpp"

namespace cornerlayer {

namespace {

GridFunction solve_on(const ProblemSpec& p, TensorMesh mesh, bool reconstructed) {
    GridFunction Y = solve_y(p, std::make_shared<const TensorMesh>(std::move(mesh)));
    if (!reconstructed) return Y;
    return reconstruct_u(Y, amplitude_A0(p), p);
}

double cell_difference(const ProblemSpec& p, int N, int M, bool reconstructed, FineTimeTransition fine_tau) {
    auto [coarse_mesh, fine_mesh] = two_mesh_pair(p, N, M, fine_tau);
    const GridFunction coarse = solve_on(p, std::move(coarse_mesh), reconstructed);
    const GridFunction fine = solve_on(p, std::move(fine_mesh), reconstructed);
    return max_diff(coarse, fine);
}

std::vector<double> table_row(const ProblemSpec& p, const std::vector<int>& Ns, const std::vector<int>& Ms,
                              bool reconstructed, FineTimeTransition fine_tau) {
    std::vector<double> row(Ns.size());
    for (std::size_t c = 0; c < Ns.size(); ++c) row[c] = cell_difference(p, Ns[c], Ms[c], reconstructed, fine_tau);
    return row;
}

// Round-half-even of the shortest round-trip decimal representation of |v|,
// keeping digits up to 10^lowest_power. Returns the digit string and the power
// of ten of its first digit.
struct Decimal {
    std::string digits;  // no leading zeros unless the value is zero ("0")
    int exponent;        // value = d0.d1d2... * 10^exponent
};

Decimal shortest_decimal(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, std::fabs(v), std::chars_format::scientific);
    const std::string s(buf, res.ptr);
    const auto epos = s.find('e');
    std::string mantissa = s.substr(0, epos);
    mantissa.erase(std::remove(mantissa.begin(), mantissa.end(), '.'), mantissa.end());
    return {mantissa, std::stoi(s.substr(epos + 1))};
}

// Keeps `keep` leading digits of d (keep may be <= 0), rounding half to even.
Decimal round_digits(Decimal d, int keep) {
    if (keep >= static_cast<int>(d.digits.size())) {
        d.digits.append(static_cast<std::size_t>(keep) - d.digits.size(), '0');
        return d;
    }
    std::string kept = keep > 0 ? d.digits.substr(0, static_cast<std::size_t>(keep)) : std::string();
    const std::string rest = d.digits.substr(static_cast<std::size_t>(std::max(keep, 0)));
    // For keep < 0 the dropped part starts below the first digit: it is < half.
    bool up = false;
    if (keep >= 0) {
        const char first = rest[0];
        const bool tail_nonzero = rest.find_first_not_of('0', 1) != std::string::npos;
        if (first > '5' || (first == '5' && tail_nonzero)) up = true;
        else if (first == '5') up = !kept.empty() && ((kept.back() - '0') % 2 == 1);
    }
    if (!up) {
        if (kept.empty()) return {"", d.exponent};
        return {kept, d.exponent};
    }
    // Increment kept (empty kept means a unit in the first dropped position's predecessor).
    int pos = static_cast<int>(kept.size()) - 1;
    while (pos >= 0 && kept[static_cast<std::size_t>(pos)] == '9') kept[static_cast<std::size_t>(pos--)] = '0';
    if (pos >= 0) {
        ++kept[static_cast<std::size_t>(pos)];
        return {kept, d.exponent};
    }
    // All nines: 9.99 -> 10.0, keeping the digit count.
    if (!kept.empty()) kept.pop_back();
    return {"1" + kept, d.exponent + 1};
}

}  // namespace

std::pair<TensorMesh, TensorMesh> two_mesh_pair(const ProblemSpec& p, int N, int M, FineTimeTransition fine_tau) {
    TensorMesh coarse = shishkin_mesh(N, M, p.eps, p.beta, p.T);
    Mesh1D fine_time = fine_tau == FineTimeTransition::Coarse ? time_mesh_with_transition(2 * M, coarse.tau, p.T)
                                                              : time_mesh(2 * M, p.eps, p.beta, p.T);
    TensorMesh fine = tensor(space_mesh(2 * N, p.eps, p.beta), std::move(fine_time));
    return {std::move(coarse), std::move(fine)};
}

double two_mesh_cell(const ProblemSpec& p, int N, int M, const CellOptions& options) {
    return cell_difference(p, N, M, options.reconstructed, options.fine_tau);
}

std::vector<double> orders(const std::vector<double>& differences) {
    std::vector<double> q;
    for (std::size_t c = 0; c + 1 < differences.size(); ++c) q.push_back(std::log2(differences[c] / differences[c + 1]));
    return q;
}

void finalize_table(ConvergenceTable& table) {
    table.Q.clear();
    for (const auto& row : table.D) table.Q.push_back(orders(row));
    table.uniform_D.assign(table.columns(), 0.0);
    for (const auto& row : table.D) {
        for (std::size_t c = 0; c < row.size(); ++c) table.uniform_D[c] = std::max(table.uniform_D[c], row[c]);
    }
    if (table.D.empty()) table.uniform_D.clear();
    table.uniform_Q = orders(table.uniform_D);
}

ConvergenceTable build_table(const ProblemSpec& p, const TableOptions& options) {
    ConvergenceTable table;
    table.eps_exponents = options.eps_exponents;
    table.Ns = options.Ns;
    if (!options.Ms.empty()) {
        if (options.Ms.size() != options.Ns.size()) throw std::invalid_argument("N and M lists differ in length");
        table.Ms = options.Ms;
    } else {
        if (options.m_divisor <= 0) throw std::invalid_argument("M divisor must be positive");
        for (int N : options.Ns) table.Ms.push_back(N / options.m_divisor);
    }
    // Validate every mesh up front.
    for (std::size_t c = 0; c < table.Ns.size(); ++c) {
        (void)space_mesh(table.Ns[c], 1.0, 1.0);
        (void)time_mesh(table.Ms[c], 1.0, 1.0, p.T);
    }

    const std::size_t rows = table.eps_exponents.size();
    table.D.assign(rows, {});
    std::atomic<std::size_t> next{0};
    std::mutex report_mutex;
    std::exception_ptr failure;

    auto worker = [&] {
        for (;;) {
            const std::size_t r = next.fetch_add(1);
            if (r >= rows) return;
            try {
                const auto start = std::chrono::steady_clock::now();
                const ProblemSpec pe = with_eps(p, std::ldexp(1.0, -table.eps_exponents[r]));
                table.D[r] = table_row(pe, table.Ns, table.Ms, options.reconstructed, options.fine_tau);
                const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                if (options.progress) {
                    std::lock_guard lock(report_mutex);
                    options.progress(table.eps_exponents[r], secs);
                }
            } catch (...) {
                std::lock_guard lock(report_mutex);
                if (!failure) failure = std::current_exception();
                next.store(rows);
            }
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(std::max<std::size_t>(rows, 1))));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    finalize_table(table);
    return table;
}

std::string format_scientific(double v, int digits) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
    std::string out = std::signbit(v) && v != 0.0 ? "-" : "";
    int exponent = 0;
    std::string mantissa;
    if (v == 0.0) {
        mantissa = std::string(static_cast<std::size_t>(digits) + 1, '0');
    } else {
        const Decimal r = round_digits(shortest_decimal(v), digits + 1);
        mantissa = r.digits;
        exponent = r.exponent;
    }
    out += mantissa.substr(0, 1);
    if (digits > 0) out += "." + mantissa.substr(1);
    char buf[16];
    std::snprintf(buf, sizeof buf, "E%c%02d", exponent < 0 ? '-' : '+', std::abs(exponent));
    return out + buf;
}

std::string format_fixed(double v, int decimals) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
    std::string digits;  // all digits from 10^0 down to 10^-decimals, possibly with more integer digits
    int exponent = 0;
    if (v != 0.0) {
        const Decimal d = shortest_decimal(v);
        const Decimal r = round_digits(d, d.exponent + 1 + decimals);
        digits = r.digits;
        exponent = r.exponent;
    }
    // Value = 0.digits * 10^(exponent+1); expand into integer and fractional parts.
    std::string integer_part, fraction;
    if (digits.empty()) {
        integer_part = "0";
        fraction = std::string(static_cast<std::size_t>(decimals), '0');
    } else if (exponent >= 0) {
        integer_part = digits.substr(0, static_cast<std::size_t>(exponent) + 1);
        integer_part.append(static_cast<std::size_t>(exponent) + 1 - integer_part.size(), '0');
        fraction = digits.size() > static_cast<std::size_t>(exponent) + 1 ? digits.substr(static_cast<std::size_t>(exponent) + 1) : "";
    } else {
        integer_part = "0";
        fraction = std::string(static_cast<std::size_t>(-exponent - 1), '0') + digits;
    }
    fraction.resize(static_cast<std::size_t>(decimals), '0');
    const bool negative = std::signbit(v) && (integer_part != "0" || fraction.find_first_not_of('0') != std::string::npos);
    std::string out = negative ? "-" : "";
    out += integer_part;
    if (decimals > 0) out += "." + fraction;
    return out;
}

std::vector<int> full_eps_sweep() {
    std::vector<int> k(31);
    std::iota(k.begin(), k.end(), 0);
    return k;
}

std::string emit(const ConvergenceTable& table, TableFormat format) {
    const std::size_t cols = table.columns();
    std::string out;
    auto q_cell = [](const std::vector<double>& q, std::size_t c) { return c < q.size() ? format_fixed(q[c]) : std::string(); };

    if (format == TableFormat::Csv) {
        out += "eps";
        for (std::size_t c = 0; c < cols; ++c) {
            const std::string tag = "N" + std::to_string(table.Ns[c]) + "_M" + std::to_string(table.Ms[c]);
            out += ",D_" + tag + ",Q_" + tag;
        }
        out += "\n";
        if (table.D.empty()) return out;
        auto line = [&](const std::string& label, const std::vector<double>& d, const std::vector<double>& q) {
            out += label;
            for (std::size_t c = 0; c < cols; ++c) out += "," + format_scientific(d[c]) + "," + q_cell(q, c);
            out += "\n";
        };
        for (std::size_t r = 0; r < table.D.size(); ++r) line("2^-" + std::to_string(table.eps_exponents[r]), table.D[r], table.Q[r]);
        line("uniform", table.uniform_D, table.uniform_Q);
        return out;
    }

    auto pad = [](std::string s, std::size_t w) {
        if (s.size() < w) s.insert(0, w - s.size(), ' ');
        return s;
    };
    constexpr std::size_t kLabel = 10, kCell = 11;
    out += pad("", kLabel);
    for (std::size_t c = 0; c < cols; ++c) out += pad("N=" + std::to_string(table.Ns[c]), kCell);
    out += "\n" + pad("", kLabel);
    for (std::size_t c = 0; c < cols; ++c) out += pad("M=" + std::to_string(table.Ms[c]), kCell);
    out += "\n";
    auto block = [&](const std::string& d_label, const std::string& q_label, const std::vector<double>& d,
                     const std::vector<double>& q) {
        out += pad(d_label, kLabel);
        for (std::size_t c = 0; c < cols; ++c) out += pad(format_scientific(d[c]), kCell);
        out += "\n" + pad(q_label, kLabel);
        for (std::size_t c = 0; c < cols; ++c) out += pad(q_cell(q, c), kCell);
        out += "\n";
    };
    for (std::size_t r = 0; r < table.D.size(); ++r) {
        block("eps=2^-" + std::to_string(table.eps_exponents[r]), "", table.D[r], table.Q[r]);
    }
    if (!table.D.empty()) block("D^{N,M}", "Q^{N,M}", table.uniform_D, table.uniform_Q);
    return out;
}

}  // namespace cornerlayer

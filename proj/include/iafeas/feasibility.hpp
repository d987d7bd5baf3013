#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "iafeas/model.hpp"

namespace iafeas {

/// Zero-forcing constraint u_m^[k]† H^[kj] v_n^[j] = 0.
/// Users k, j are 0-based; stream columns m, n are 1-based.
struct EquationId {
    int rx_user = 0;
    int tx_user = 0;
    int rx_col = 1;
    int tx_col = 1;

    friend auto operator<=>(const EquationId&, const EquationId&) = default;
};

/// Human-readable label with 1-based users, e.g. "E_12^11".
std::string to_string(const EquationId& eq);

enum class BlockKind { Tx, Rx };

/// Free scalars of one beamforming column after fixing the reduced basis:
/// a transmit column carries M - d of them, a receive column N - d.
struct VariableBlock {
    BlockKind kind = BlockKind::Tx;
    int user = 0;
    int column = 1;
    int size = 0;

    friend bool operator==(const VariableBlock&, const VariableBlock&) = default;
};

struct EquationEntry {
    EquationId id;
    VariableBlock tx_block;
    VariableBlock rx_block;

    int variable_count() const { return tx_block.size + rx_block.size; }
};

struct CountReport {
    std::int64_t num_equations = 0;
    std::int64_t num_variables = 0;
};

enum class Verdict { Proper, Improper };

const char* to_string(Verdict v);

struct SlotAssignment {
    EquationId equation;
    BlockKind kind;
    int user;
    int column;
    /// Scalar index inside the block, in [0, block size).
    int slot;
};

/// Equation-to-slot map proving no subset is over-determined.
struct SaturatingAssignment {
    std::vector<SlotAssignment> entries;
};

/// Equations whose union of variables is smaller than their number.
struct ViolatingSubset {
    std::vector<EquationId> equations;
    std::int64_t union_size = 0;
};

struct Classification {
    Verdict verdict = Verdict::Proper;
    /// Proper verdicts from brute force carry no assignment (monostate).
    std::variant<std::monostate, SaturatingAssignment, ViolatingSubset> witness;
    CountReport counts;
};

enum class TotalCheck { ProperCandidate, Improper };

std::int64_t count_equations(const SystemSpec& spec);
std::int64_t count_variables(const SystemSpec& spec);
CountReport count(const SystemSpec& spec);

/// All equations in lexicographic (k, j, m, n) order.
std::vector<EquationEntry> enumerate_equations(const SystemSpec& spec);

/// The cheap necessary test N_v >= N_e.
TotalCheck classify_total(const SystemSpec& spec);

/// Decides the subset condition through a maximum assignment of equations
/// to distinct scalar variable slots (Hall's theorem). Polynomial time.
Classification classify_proper(const SystemSpec& spec);

class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Literal check of every nonempty equation subset. Throws SizeError when
/// the equation count exceeds `max_equations`.
Classification brute_force_proper(const SystemSpec& spec, int max_equations = 20);

/// Recomputes the witness arithmetic; true iff the witness proves the verdict.
bool check_witness(const SystemSpec& spec, const Classification& c);

Verdict symmetric_proper(const SymmetricSpec& sym);

/// Largest d with d <= min(M,N) and M + N - (K+1)d >= 0; 0 if none.
int max_symmetric_dof(int tx_antennas, int rx_antennas, int num_users);

/// Moves `delta` antennas from every receiver to its transmitter (negative
/// moves the other way). Throws InvalidSpec if an end drops below d.
SymmetricSpec antenna_transfer(const SymmetricSpec& sym, int delta);

/// Every antenna_transfer variant of `sym`, ordered by transmit antennas.
std::vector<SymmetricSpec> antenna_group(const SymmetricSpec& sym);

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    friend bool operator==(const Rational&, const Rational&) = default;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

Rational make_rational(std::int64_t num, std::int64_t den);
bool operator<=(const Rational& a, const Rational& b);

/// 1 + max(M,N)/min(M,N) - d/min(M,N), reduced.
Rational dof_ratio_bound(const SymmetricSpec& sym);

/// dK / min(M,N), reduced.
Rational normalized_dof(const SymmetricSpec& sym);

}  // namespace iafeas

#include "iafeas/feasibility.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>

namespace iafeas {

namespace {

// Flat indexing of the variable blocks: transmit columns of all users first,
// then receive columns.
struct BlockIndex {
    std::vector<int> offset;  // per user, start of its columns
    int per_side = 0;
    std::vector<VariableBlock> blocks;

    explicit BlockIndex(const SystemSpec& spec) {
        offset.reserve(spec.num_users());
        for (const auto& u : spec.users) {
            offset.push_back(per_side);
            per_side += u.dof;
        }
        blocks.resize(static_cast<std::size_t>(2 * per_side));
        for (std::size_t k = 0; k < spec.num_users(); ++k) {
            const auto& u = spec.users[k];
            for (int c = 1; c <= u.dof; ++c) {
                blocks[static_cast<std::size_t>(tx(static_cast<int>(k), c))] =
                    {BlockKind::Tx, static_cast<int>(k), c, u.tx_antennas - u.dof};
                blocks[static_cast<std::size_t>(rx(static_cast<int>(k), c))] =
                    {BlockKind::Rx, static_cast<int>(k), c, u.rx_antennas - u.dof};
            }
        }
    }

    int tx(int user, int column) const { return offset[static_cast<std::size_t>(user)] + column - 1; }
    int rx(int user, int column) const {
        return per_side + offset[static_cast<std::size_t>(user)] + column - 1;
    }
    int of(const VariableBlock& b) const {
        return b.kind == BlockKind::Tx ? tx(b.user, b.column) : rx(b.user, b.column);
    }
    int size(int b) const { return blocks[static_cast<std::size_t>(b)].size; }
};

struct IncidentBlocks {
    int tx;
    int rx;
};

std::vector<IncidentBlocks> incidence(const std::vector<EquationEntry>& eqs, const BlockIndex& idx) {
    std::vector<IncidentBlocks> out;
    out.reserve(eqs.size());
    for (const auto& e : eqs) out.push_back({idx.of(e.tx_block), idx.of(e.rx_block)});
    return out;
}

// Maximum assignment of equations to scalar slots, grown one equation at a
// time along shortest alternating paths.
class SlotMatcher {
public:
    SlotMatcher(const std::vector<IncidentBlocks>& inc, const BlockIndex& idx)
        : inc_(inc), idx_(idx), assigned_(inc.size(), -1), members_(idx.blocks.size()) {}

    void run() {
        for (int e = 0; e < static_cast<int>(inc_.size()); ++e) augment(e);
    }

    int assigned(int e) const { return assigned_[static_cast<std::size_t>(e)]; }
    const std::vector<int>& members(int b) const { return members_[static_cast<std::size_t>(b)]; }

    // Equations and blocks reachable from `root` by alternating paths.
    std::pair<std::vector<int>, std::vector<int>> reachable(int root) const {
        Search s = search(root);
        std::vector<int> eqs, blocks;
        for (std::size_t i = 0; i < s.eq_seen.size(); ++i)
            if (s.eq_seen[i]) eqs.push_back(static_cast<int>(i));
        for (std::size_t i = 0; i < s.block_parent.size(); ++i)
            if (s.block_parent[i] >= 0) blocks.push_back(static_cast<int>(i));
        return {eqs, blocks};
    }

private:
    struct Search {
        std::vector<char> eq_seen;
        std::vector<int> block_parent;  // equation that reached the block
        int free_block = -1;
    };

    Search search(int root) const {
        Search s{std::vector<char>(inc_.size(), 0), std::vector<int>(idx_.blocks.size(), -1), -1};
        std::queue<int> queue;
        queue.push(root);
        s.eq_seen[static_cast<std::size_t>(root)] = 1;
        while (!queue.empty()) {
            const int e = queue.front();
            queue.pop();
            const auto& ib = inc_[static_cast<std::size_t>(e)];
            for (int b : {ib.tx, ib.rx}) {
                if (b == assigned(e) || s.block_parent[static_cast<std::size_t>(b)] >= 0) continue;
                s.block_parent[static_cast<std::size_t>(b)] = e;
                if (static_cast<int>(members(b).size()) < idx_.size(b)) {
                    s.free_block = b;
                    return s;
                }
                for (int next : members(b)) {
                    if (!s.eq_seen[static_cast<std::size_t>(next)]) {
                        s.eq_seen[static_cast<std::size_t>(next)] = 1;
                        queue.push(next);
                    }
                }
            }
        }
        return s;
    }

    bool augment(int root) {
        const Search s = search(root);
        if (s.free_block < 0) return false;
        int block = s.free_block;
        while (true) {
            const int e = s.block_parent[static_cast<std::size_t>(block)];
            const int previous = assigned(e);
            if (previous >= 0) {
                auto& from = members_[static_cast<std::size_t>(previous)];
                from.erase(std::find(from.begin(), from.end(), e));
            }
            members_[static_cast<std::size_t>(block)].push_back(e);
            assigned_[static_cast<std::size_t>(e)] = block;
            if (e == root) return true;
            block = previous;
        }
    }

    const std::vector<IncidentBlocks>& inc_;
    const BlockIndex& idx_;
    std::vector<int> assigned_;
    std::vector<std::vector<int>> members_;
};

}  // namespace

std::string to_string(const EquationId& eq) {
    return "E_" + std::to_string(eq.rx_user + 1) + std::to_string(eq.tx_user + 1) + "^" +
           std::to_string(eq.rx_col) + std::to_string(eq.tx_col);
}

const char* to_string(Verdict v) { return v == Verdict::Proper ? "proper" : "improper"; }

std::int64_t count_equations(const SystemSpec& spec) {
    std::int64_t total = 0;
    std::int64_t sum = 0;
    std::int64_t sum_sq = 0;
    for (const auto& u : spec.users) {
        sum += u.dof;
        sum_sq += std::int64_t{u.dof} * u.dof;
    }
    total = sum * sum - sum_sq;
    return total;
}

std::int64_t count_variables(const SystemSpec& spec) {
    std::int64_t total = 0;
    for (const auto& u : spec.users)
        total += std::int64_t{u.dof} * (u.tx_antennas + u.rx_antennas - 2 * u.dof);
    return total;
}

CountReport count(const SystemSpec& spec) { return {count_equations(spec), count_variables(spec)}; }

std::vector<EquationEntry> enumerate_equations(const SystemSpec& spec) {
    require_valid(spec);
    std::vector<EquationEntry> out;
    out.reserve(static_cast<std::size_t>(count_equations(spec)));
    const int K = static_cast<int>(spec.num_users());
    for (int k = 0; k < K; ++k) {
        const auto& rx = spec.users[static_cast<std::size_t>(k)];
        for (int j = 0; j < K; ++j) {
            if (j == k) continue;
            const auto& tx = spec.users[static_cast<std::size_t>(j)];
            for (int m = 1; m <= rx.dof; ++m) {
                for (int n = 1; n <= tx.dof; ++n) {
                    out.push_back({{k, j, m, n},
                                   {BlockKind::Tx, j, n, tx.tx_antennas - tx.dof},
                                   {BlockKind::Rx, k, m, rx.rx_antennas - rx.dof}});
                }
            }
        }
    }
    return out;
}

TotalCheck classify_total(const SystemSpec& spec) {
    return count_variables(spec) < count_equations(spec) ? TotalCheck::Improper
                                                         : TotalCheck::ProperCandidate;
}

Classification classify_proper(const SystemSpec& spec) {
    const auto eqs = enumerate_equations(spec);
    const BlockIndex idx(spec);
    const auto inc = incidence(eqs, idx);

    SlotMatcher matcher(inc, idx);
    matcher.run();

    Classification result;
    result.counts = count(spec);

    int first_free = -1;
    for (int e = 0; e < static_cast<int>(eqs.size()); ++e) {
        if (matcher.assigned(e) < 0) {
            first_free = e;
            break;
        }
    }

    if (first_free >= 0) {
        // Every block reachable from an unsaturated equation is full, so the
        // reached equations outnumber the union of their blocks by one.
        const auto [reached_eqs, reached_blocks] = matcher.reachable(first_free);
        ViolatingSubset witness;
        for (int e : reached_eqs) witness.equations.push_back(eqs[static_cast<std::size_t>(e)].id);
        for (int b : reached_blocks) witness.union_size += idx.size(b);
        result.verdict = Verdict::Improper;
        result.witness = std::move(witness);
        return result;
    }

    SaturatingAssignment witness;
    witness.entries.resize(eqs.size());
    for (std::size_t b = 0; b < idx.blocks.size(); ++b) {
        auto members = matcher.members(static_cast<int>(b));
        std::sort(members.begin(), members.end());
        const auto& block = idx.blocks[b];
        for (std::size_t slot = 0; slot < members.size(); ++slot) {
            const auto e = static_cast<std::size_t>(members[slot]);
            witness.entries[e] = {eqs[e].id, block.kind, block.user, block.column, static_cast<int>(slot)};
        }
    }
    result.verdict = Verdict::Proper;
    result.witness = std::move(witness);
    return result;
}

Classification brute_force_proper(const SystemSpec& spec, int max_equations) {
    const auto n_eq = count_equations(spec);
    if (n_eq > max_equations || max_equations > 62) {
        throw SizeError("brute force limited to " + std::to_string(std::min(max_equations, 62)) +
                        " equations, system has " + std::to_string(n_eq));
    }
    const auto eqs = enumerate_equations(spec);
    const BlockIndex idx(spec);
    const auto inc = incidence(eqs, idx);

    Classification result;
    result.counts = count(spec);
    result.verdict = Verdict::Proper;

    // Gray-code walk over all subsets: each step toggles one equation, so the
    // subset size and union size update in O(1).
    std::vector<int> uses(idx.blocks.size(), 0);
    std::int64_t subset_size = 0;
    std::int64_t union_size = 0;
    std::uint64_t members = 0;
    const std::uint64_t total = std::uint64_t{1} << eqs.size();
    for (std::uint64_t step = 1; step < total; ++step) {
        const int e = std::countr_zero(step);
        const auto bit = std::uint64_t{1} << e;
        const auto& ib = inc[static_cast<std::size_t>(e)];
        const bool adding = (members & bit) == 0;
        members ^= bit;
        for (int b : {ib.tx, ib.rx}) {
            auto& u = uses[static_cast<std::size_t>(b)];
            if (adding) {
                if (u++ == 0) union_size += idx.size(b);
            } else {
                if (--u == 0) union_size -= idx.size(b);
            }
        }
        subset_size += adding ? 1 : -1;
        if (subset_size > union_size) {
            ViolatingSubset witness;
            for (std::size_t i = 0; i < eqs.size(); ++i)
                if (members & (std::uint64_t{1} << i)) witness.equations.push_back(eqs[i].id);
            witness.union_size = union_size;
            result.verdict = Verdict::Improper;
            result.witness = std::move(witness);
            return result;
        }
    }
    return result;
}

bool check_witness(const SystemSpec& spec, const Classification& c) {
    const auto eqs = enumerate_equations(spec);
    const BlockIndex idx(spec);

    auto find_eq = [&](const EquationId& id) -> const EquationEntry* {
        auto it = std::lower_bound(eqs.begin(), eqs.end(), id,
                                   [](const EquationEntry& a, const EquationId& b) { return a.id < b; });
        return (it != eqs.end() && it->id == id) ? &*it : nullptr;
    };

    if (const auto* a = std::get_if<SaturatingAssignment>(&c.witness)) {
        if (c.verdict != Verdict::Proper || a->entries.size() != eqs.size()) return false;
        std::set<EquationId> seen_eq;
        std::set<std::tuple<int, int, int, int>> seen_slot;
        for (const auto& s : a->entries) {
            const auto* eq = find_eq(s.equation);
            if (!eq || !seen_eq.insert(s.equation).second) return false;
            const VariableBlock& block = s.kind == BlockKind::Tx ? eq->tx_block : eq->rx_block;
            if (block.user != s.user || block.column != s.column) return false;
            if (s.slot < 0 || s.slot >= block.size) return false;
            if (!seen_slot.insert({static_cast<int>(s.kind), s.user, s.column, s.slot}).second) return false;
        }
        return true;
    }
    if (const auto* v = std::get_if<ViolatingSubset>(&c.witness)) {
        if (c.verdict != Verdict::Improper || v->equations.empty()) return false;
        std::set<EquationId> distinct;
        std::set<int> blocks;
        for (const auto& id : v->equations) {
            const auto* eq = find_eq(id);
            if (!eq || !distinct.insert(id).second) return false;
            blocks.insert(idx.of(eq->tx_block));
            blocks.insert(idx.of(eq->rx_block));
        }
        std::int64_t union_size = 0;
        for (int b : blocks) union_size += idx.size(b);
        return union_size == v->union_size &&
               static_cast<std::int64_t>(v->equations.size()) > union_size;
    }
    return c.verdict == Verdict::Proper;
}

Verdict symmetric_proper(const SymmetricSpec& sym) {
    if (!sym.valid()) throw InvalidSpec("invalid symmetric system " + format_system(sym));
    return sym.tx_antennas + sym.rx_antennas - (sym.num_users + 1) * sym.dof >= 0 ? Verdict::Proper
                                                                                  : Verdict::Improper;
}

int max_symmetric_dof(int tx_antennas, int rx_antennas, int num_users) {
    if (tx_antennas < 1 || rx_antennas < 1 || num_users < 1)
        throw InvalidSpec("antenna and user counts must be positive");
    return std::min(std::min(tx_antennas, rx_antennas), (tx_antennas + rx_antennas) / (num_users + 1));
}

SymmetricSpec antenna_transfer(const SymmetricSpec& sym, int delta) {
    if (!sym.valid()) throw InvalidSpec("invalid symmetric system " + format_system(sym));
    SymmetricSpec out = sym;
    out.tx_antennas += delta;
    out.rx_antennas -= delta;
    if (!out.valid()) {
        throw InvalidSpec("transfer of " + std::to_string(delta) + " leaves fewer than d=" +
                          std::to_string(sym.dof) + " antennas at one end");
    }
    return out;
}

std::vector<SymmetricSpec> antenna_group(const SymmetricSpec& sym) {
    if (!sym.valid()) throw InvalidSpec("invalid symmetric system " + format_system(sym));
    std::vector<SymmetricSpec> out;
    for (int delta = sym.dof - sym.tx_antennas; delta <= sym.rx_antennas - sym.dof; ++delta)
        out.push_back(antenna_transfer(sym, delta));
    return out;
}

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const auto g = std::gcd(num, den);
    return {num / g, den / g};
}

bool operator<=(const Rational& a, const Rational& b) { return a.num * b.den <= b.num * a.den; }

Rational dof_ratio_bound(const SymmetricSpec& sym) {
    if (!sym.valid()) throw InvalidSpec("invalid symmetric system " + format_system(sym));
    const int lo = std::min(sym.tx_antennas, sym.rx_antennas);
    const int hi = std::max(sym.tx_antennas, sym.rx_antennas);
    return make_rational(lo + hi - sym.dof, lo);
}

Rational normalized_dof(const SymmetricSpec& sym) {
    if (!sym.valid()) throw InvalidSpec("invalid symmetric system " + format_system(sym));
    return make_rational(std::int64_t{sym.dof} * sym.num_users,
                         std::min(sym.tx_antennas, sym.rx_antennas));
}

}  // namespace iafeas

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace iafeas {

/// Antenna counts and demanded streams of one transmitter/receiver pair.
struct UserConfig {
    int tx_antennas = 1;
    int rx_antennas = 1;
    int dof = 1;

    friend bool operator==(const UserConfig&, const UserConfig&) = default;
};

/// A K-user MIMO interference network. Users are identified by their
/// 0-based position in `users`.
struct SystemSpec {
    std::vector<UserConfig> users;

    std::size_t num_users() const { return users.size(); }
    const UserConfig& operator[](std::size_t k) const { return users[k]; }
    int total_dof() const;
    bool is_symmetric() const;

    friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

/// (M x N, d)^K.
struct SymmetricSpec {
    int tx_antennas = 1;
    int rx_antennas = 1;
    int dof = 1;
    int num_users = 1;

    SystemSpec expand() const;
    bool valid() const;

    friend bool operator==(const SymmetricSpec&, const SymmetricSpec&) = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position);
    /// 0-based offset into the parsed text.
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Thrown by operations whose precondition is a valid spec.
class InvalidSpec : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses `(MxN,d)` groups, each optionally followed by `^r`, e.g.
/// "(5x5,3)(5x5,2)^3". Whitespace is allowed between tokens.
SystemSpec parse_system(std::string_view text);

struct Violation {
    std::size_t user;
    std::string reason;
};

/// Every user breaking positivity or d <= min(M, N). Empty means valid.
std::vector<Violation> validate(const SystemSpec& spec);

/// Throws InvalidSpec listing the first violation, if any.
void require_valid(const SystemSpec& spec);

/// Canonical text form; adjacent identical users collapse into `^r`.
std::string format_system(const SystemSpec& spec);
std::string format_system(const SymmetricSpec& spec);

/// Returns the symmetric description if all users are identical.
std::optional<SymmetricSpec> as_symmetric(const SystemSpec& spec);

}  // namespace iafeas

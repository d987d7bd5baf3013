#include "iafeas/model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace iafeas {

namespace {

// Keeps every derived count comfortably inside int64.
constexpr long kMaxValue = 4096;
constexpr std::size_t kMaxUsers = 4096;

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    SystemSpec run() {
        SystemSpec spec;
        skip_space();
        if (at_end()) fail("expected '('");
        while (!at_end()) {
            parse_group(spec);
            skip_space();
        }
        return spec;
    }

private:
    void parse_group(SystemSpec& spec) {
        expect('(');
        const std::size_t m_pos = pos_;
        const long m = number("transmit antenna count");
        skip_space();
        if (at_end() || (text_[pos_] != 'x' && text_[pos_] != 'X')) fail("expected 'x'");
        ++pos_;
        const std::size_t n_pos = pos_;
        const long n = number("receive antenna count");
        expect(',');
        const std::size_t d_pos = pos_;
        const long d = number("degrees of freedom");
        expect(')');
        long repeat = 1;
        skip_space();
        if (!at_end() && text_[pos_] == '^') {
            ++pos_;
            const std::size_t r_pos = pos_;
            repeat = number("repeat count");
            if (repeat == 0) fail_at("repeat count must be at least 1", r_pos);
        }
        if (m == 0) fail_at("transmit antenna count must be positive", m_pos);
        if (n == 0) fail_at("receive antenna count must be positive", n_pos);
        if (d == 0) fail_at("degrees of freedom must be positive", d_pos);
        if (spec.users.size() + static_cast<std::size_t>(repeat) > kMaxUsers)
            fail("too many users");
        spec.users.insert(spec.users.end(), static_cast<std::size_t>(repeat),
                          UserConfig{static_cast<int>(m), static_cast<int>(n), static_cast<int>(d)});
    }

    long number(const char* what) {
        skip_space();
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail(std::string("expected ") + what);
        long value = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc{} || value > kMaxValue)
            fail_at(std::string(what) + " too large", start);
        return value;
    }

    void expect(char c) {
        skip_space();
        if (at_end() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() const { return pos_ >= text_.size(); }

    [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, pos_); }

    [[noreturn]] static void fail_at(const std::string& msg, std::size_t pos) {
        throw ParseError(msg, pos);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error("syntax error at position " + std::to_string(position) + ": " + what),
      position_(position) {}

int SystemSpec::total_dof() const {
    int total = 0;
    for (const auto& u : users) total += u.dof;
    return total;
}

bool SystemSpec::is_symmetric() const {
    return std::adjacent_find(users.begin(), users.end(), std::not_equal_to<>{}) == users.end();
}

SystemSpec SymmetricSpec::expand() const {
    return SystemSpec{std::vector<UserConfig>(static_cast<std::size_t>(std::max(num_users, 0)),
                                              UserConfig{tx_antennas, rx_antennas, dof})};
}

bool SymmetricSpec::valid() const {
    return num_users >= 1 && tx_antennas >= 1 && rx_antennas >= 1 && dof >= 1 &&
           dof <= std::min(tx_antennas, rx_antennas);
}

SystemSpec parse_system(std::string_view text) { return Parser(text).run(); }

std::vector<Violation> validate(const SystemSpec& spec) {
    std::vector<Violation> out;
    for (std::size_t k = 0; k < spec.users.size(); ++k) {
        const auto& u = spec.users[k];
        if (u.tx_antennas < 1 || u.rx_antennas < 1 || u.dof < 1) {
            out.push_back({k, "antenna counts and dof must be positive"});
        } else if (u.dof > std::min(u.tx_antennas, u.rx_antennas)) {
            out.push_back({k, "d=" + std::to_string(u.dof) + " exceeds min(M,N)=" +
                                  std::to_string(std::min(u.tx_antennas, u.rx_antennas))});
        }
    }
    return out;
}

void require_valid(const SystemSpec& spec) {
    if (spec.users.empty()) throw InvalidSpec("system has no users");
    const auto violations = validate(spec);
    if (!violations.empty()) {
        throw InvalidSpec("user " + std::to_string(violations.front().user) + ": " +
                          violations.front().reason);
    }
}

std::string format_system(const SystemSpec& spec) {
    std::ostringstream os;
    const auto& users = spec.users;
    for (std::size_t i = 0; i < users.size();) {
        std::size_t run = 1;
        while (i + run < users.size() && users[i + run] == users[i]) ++run;
        const auto& u = users[i];
        os << '(' << u.tx_antennas << 'x' << u.rx_antennas << ',' << u.dof << ')';
        if (run > 1) os << '^' << run;
        i += run;
    }
    return os.str();
}

std::string format_system(const SymmetricSpec& spec) { return format_system(spec.expand()); }

std::optional<SymmetricSpec> as_symmetric(const SystemSpec& spec) {
    if (spec.users.empty() || !spec.is_symmetric()) return std::nullopt;
    const auto& u = spec.users.front();
    return SymmetricSpec{u.tx_antennas, u.rx_antennas, u.dof, static_cast<int>(spec.users.size())};
}

}  // namespace iafeas

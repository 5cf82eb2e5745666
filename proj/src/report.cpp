#include "gext/report.hpp"

#include <sstream>

namespace gext {

void Report::section(const std::string& name) { lines_.push_back({0, name, ""}); }
void Report::add(const std::string& key, const std::string& value) { lines_.push_back({1, key, value}); }
void Report::add(const std::string& key, ll value) { add(key, std::to_string(value)); }

void Report::add_row(const std::vector<std::string>& cells) {
    std::string joined;
    for (size_t i = 0; i < cells.size(); ++i) joined += (i ? "  " : "") + cells[i];
    lines_.push_back({2, joined, ""});
}

std::string Report::render_text(double duration_ms) const {
    std::ostringstream os;
    for (const auto& l : lines_) {
        if (l.kind == 0)
            os << "[" << l.a << "]\n";
        else if (l.kind == 1)
            os << l.a << ": " << l.b << "\n";
        else
            os << "  " << l.a << "\n";
    }
    os << "duration-ms: " << static_cast<ll>(duration_ms) << "\n";
    return os.str();
}

std::string Report::render_machine() const {
    std::ostringstream os;
    std::string sec;
    for (const auto& l : lines_) {
        if (l.kind == 0)
            sec = l.a + ".";
        else if (l.kind == 1)
            os << sec << l.a << "\t" << l.b << "\n";
        else
            os << sec << "row\t" << l.a << "\n";
    }
    return os.str();
}

uint64_t fnv_digest(const std::string& data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string digest_hex(uint64_t h) {
    static const char* hexd = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = hexd[h & 0xf];
        h >>= 4;
    }
    return s;
}

}  // namespace gext

#pragma once

#include <string>
#include <vector>

#include "gext/matrix.hpp"

namespace gext {

// Structured run report: ordered key/value records with optional section
// headers. The machine rendering is byte-stable across runs on identical
// inputs (no timestamps); the text rendering appends the wall-clock line.
class Report {
  public:
    void section(const std::string& name);
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, ll value);
    void add_row(const std::vector<std::string>& cells);

    std::string render_text(double duration_ms) const;
    std::string render_machine() const;

  private:
    struct Line {
        int kind;  // 0 section, 1 kv, 2 row
        std::string a, b;
    };
    std::vector<Line> lines_;
};

uint64_t fnv_digest(const std::string& data);
std::string digest_hex(uint64_t h);

}  // namespace gext

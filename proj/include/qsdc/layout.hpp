#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsdc/errors.hpp"

namespace qsdc {

/// Named contiguous qubit ranges over an allocated block. Register-major bit
/// order: qubit (start + i) carries bit i of the register's value, so bit 0
/// of every register is its lowest qubit index. Ranges must be disjoint and
/// cover exactly the allocated qubits.
class RegisterLayout {
public:
    struct Range {
        std::string name;
        int start = 0;
        int width = 0;
    };

    void add(const std::string& name, int start, int width) {
        if (width < 1 || start < 0) throw dimension_error("bad register range");
        ranges_.push_back({name, start, width});
    }

    void rename(const std::string& from, const std::string& to) {
        for (auto& r : ranges_)
            if (r.name == from) {
                r.name = to;
                return;
            }
        throw dimension_error("no register named " + from);
    }

    const Range& at(const std::string& name) const {
        for (const auto& r : ranges_)
            if (r.name == name) return r;
        throw dimension_error("no register named " + name);
    }

    bool has(const std::string& name) const {
        for (const auto& r : ranges_)
            if (r.name == name) return true;
        return false;
    }

    const std::vector<Range>& ranges() const { return ranges_; }

    /// Disjointness + exact cover of [0, total_qubits).
    void validate(int total_qubits) const {
        std::vector<char> seen(total_qubits, 0);
        for (const auto& r : ranges_)
            for (int q = r.start; q < r.start + r.width; ++q) {
                if (q >= total_qubits || seen[q])
                    throw invariant_error("register ranges overlap or exceed allocation");
                seen[q] = 1;
            }
        for (char s : seen)
            if (!s) throw invariant_error("register ranges do not cover allocation");
    }

private:
    std::vector<Range> ranges_;
};

} // namespace qsdc

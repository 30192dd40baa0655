#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "sumcover/group.hpp"
#include "sumcover/lattice.hpp"
#include "sumcover/sumsets.hpp"

namespace sumcover {

// Reports and instances keep insertion order so serialized output is stable.
using json = nlohmann::ordered_json;

enum class InstanceKind { group_sets, basis_system, block_lattice, int_lattice };

const char* kind_name(InstanceKind k);

// group_sets payload. All-zero moduli select the integer-vector path (Z^d);
// mixing zero and nonzero moduli is rejected at validation.
struct GroupSetsData {
    bool char0 = false;
    std::optional<GroupSpec> group;                 // finite path
    std::vector<std::vector<GroupElement>> sets;    // finite path
    size_t dim_z = 0;                               // char-0 path
    std::vector<std::vector<IntVec>> sets_z;        // char-0 path
};

struct Instance {
    InstanceKind kind;
    json canonical;       // validated content, stable key order
    std::string digest;   // sha256 of canonical dump

    std::optional<GroupSetsData> group_sets;
    std::optional<BasisSystem> basis_system;
    std::optional<BlockLattice> block_lattice;
    std::optional<IntLattice> int_lattice;
};

// Strict structural validation (exact key sets, integer-only numbers, range
// checks) before anything is computed. Throws ValidationError on any defect.
Instance parse_instance(const json& j);

Instance load_instance_file(const std::string& path);
Instance parse_instance_text(const std::string& text);

// Builders used by search reports and lattice round-trips.
json group_sets_to_json(const GroupSpec& g,
                        const std::vector<std::vector<GroupElement>>& sets);
json basis_system_to_json(const BasisSystem& b);
json block_lattice_to_json(const BlockLattice& l);
json int_lattice_to_json(const IntLattice& l);

}  // namespace sumcover

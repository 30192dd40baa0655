#include "sumcover/instance.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "sumcover/digest.hpp"
#include "sumcover/errors.hpp"
#include "sumcover/version.hpp"

namespace sumcover {

namespace {

constexpr const char* instance_schema_id = "sumcover/instance-v1";

[[noreturn]] void bad(const std::string& msg) {
    throw ValidationError("instance: " + msg);
}

void expect_keys(const json& j, const std::set<std::string>& required,
                 const std::set<std::string>& optional) {
    if (!j.is_object()) bad("top level must be a JSON object");
    for (auto& [key, val] : j.items()) {
        (void)val;
        if (!required.count(key) && !optional.count(key))
            bad("unknown key '" + key + "'");
    }
    for (const auto& key : required)
        if (!j.contains(key)) bad("missing key '" + key + "'");
}

uint64_t get_uint(const json& j, const char* key, uint64_t lo, uint64_t hi) {
    const auto& v = j.at(key);
    if (!v.is_number_unsigned()) bad(std::string(key) + " must be a non-negative integer");
    uint64_t x = v.get<uint64_t>();
    if (x < lo || x > hi)
        bad(std::string(key) + " out of range [" + std::to_string(lo) + ", " +
            std::to_string(hi) + "]");
    return x;
}

// Sanity limits on raw input shapes; semantic caps live in caps.hpp.
constexpr size_t max_axes = 64;
constexpr size_t max_sets = 64;
constexpr size_t max_items_per_set = 4096;
constexpr size_t max_block = 64;
constexpr int64_t max_abs_entry = int64_t(1) << 40;

GroupSetsData parse_group_sets(const json& j) {
    expect_keys(j, {"kind", "moduli", "sets"}, {"schema"});
    const auto& jm = j.at("moduli");
    if (!jm.is_array() || jm.empty() || jm.size() > max_axes)
        bad("moduli must be a non-empty array (at most 64 axes)");
    std::vector<uint64_t> moduli;
    size_t zeros = 0;
    for (const auto& v : jm) {
        if (!v.is_number_unsigned()) bad("moduli entries must be non-negative integers");
        uint64_t m = v.get<uint64_t>();
        if (m == 1) bad("modulus 1 is not allowed; drop the axis");
        if (m > (uint64_t(1) << 32)) bad("modulus too large");
        if (m == 0) ++zeros;
        moduli.push_back(m);
    }
    if (zeros != 0 && zeros != moduli.size())
        bad("moduli must be all zero (integer vectors) or all >= 2");

    GroupSetsData data;
    data.char0 = zeros == moduli.size();

    const auto& js = j.at("sets");
    if (!js.is_array() || js.empty() || js.size() > max_sets)
        bad("sets must be a non-empty array (at most 64 sets)");

    if (data.char0) {
        data.dim_z = moduli.size();
        for (const auto& jset : js) {
            if (!jset.is_array() || jset.size() > max_items_per_set)
                bad("each set must be an array (at most 4096 items)");
            std::vector<IntVec> items;
            for (const auto& jitem : jset) {
                if (!jitem.is_array() || jitem.size() != moduli.size())
                    bad("each element must list one entry per axis");
                IntVec e;
                for (const auto& v : jitem) {
                    if (!v.is_number_integer()) bad("integer-vector entries must be integers");
                    int64_t x = v.get<int64_t>();
                    if (x > max_abs_entry || x < -max_abs_entry) bad("entry magnitude too large");
                    e.push_back(x);
                }
                items.push_back(std::move(e));
            }
            data.sets_z.push_back(std::move(items));
        }
        return data;
    }

    data.group.emplace(moduli);
    for (const auto& jset : js) {
        if (!jset.is_array() || jset.size() > max_items_per_set)
            bad("each set must be an array (at most 4096 items)");
        std::vector<GroupElement> items;
        for (const auto& jitem : jset) {
            if (!jitem.is_array() || jitem.size() != moduli.size())
                bad("each element must list one residue per axis");
            GroupElement e;
            size_t axis = 0;
            for (const auto& v : jitem) {
                if (!v.is_number_unsigned()) bad("residues must be non-negative integers");
                uint64_t x = v.get<uint64_t>();
                if (x >= moduli[axis]) bad("residue not reduced modulo its axis");
                e.push_back(static_cast<uint32_t>(x));
                ++axis;
            }
            items.push_back(std::move(e));
        }
        data.sets.push_back(std::move(items));
    }
    return data;
}

FpMatrix parse_fp_matrix(const json& jm, uint32_t p, size_t rows, size_t cols,
                         const char* what) {
    if (!jm.is_array() || jm.size() != rows)
        bad(std::string(what) + " must be an array of " + std::to_string(rows) + " rows");
    FpMatrix m(p, rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        const auto& jrow = jm.at(i);
        if (!jrow.is_array() || jrow.size() != cols)
            bad(std::string(what) + " rows must have " + std::to_string(cols) + " entries");
        for (size_t c = 0; c < cols; ++c) {
            const auto& v = jrow.at(c);
            if (!v.is_number_unsigned()) bad(std::string(what) + " entries must be residues");
            uint64_t x = v.get<uint64_t>();
            if (x >= p) bad(std::string(what) + " entries must be reduced mod p");
            m.set(i, c, static_cast<uint32_t>(x));
        }
    }
    return m;
}

BasisSystem parse_basis_system(const json& j) {
    expect_keys(j, {"kind", "p", "k", "r", "bases"}, {"schema"});
    uint64_t p = get_uint(j, "p", 2, (uint64_t(1) << 31) - 1);
    size_t k = get_uint(j, "k", 1, max_block);
    size_t r = get_uint(j, "r", 1, max_block);
    const auto& jb = j.at("bases");
    if (!jb.is_array() || jb.size() != k) bad("bases must be an array of k matrices");
    std::vector<FpMatrix> bases;
    bases.reserve(k);
    for (size_t i = 0; i < k; ++i)
        bases.push_back(parse_fp_matrix(jb.at(i), static_cast<uint32_t>(p), r, r, "basis"));
    return BasisSystem(static_cast<uint32_t>(p), r, std::move(bases));
}

BlockLattice parse_block_lattice(const json& j) {
    expect_keys(j, {"kind", "p", "k", "r", "generators"}, {"schema"});
    uint64_t p = get_uint(j, "p", 2, (uint64_t(1) << 31) - 1);
    size_t k = get_uint(j, "k", 1, max_block);
    size_t r = get_uint(j, "r", 1, max_block);
    const auto& jg = j.at("generators");
    if (!jg.is_array() || jg.size() > max_items_per_set)
        bad("generators must be an array of residue rows");
    FpMatrix gens = parse_fp_matrix(jg, static_cast<uint32_t>(p), jg.size(), k * r,
                                    "generators");
    return BlockLattice(static_cast<uint32_t>(p), k, r, std::move(gens));
}

IntLattice parse_int_lattice(const json& j) {
    expect_keys(j, {"kind", "dim", "basis"}, {"schema"});
    size_t dim = get_uint(j, "dim", 1, max_block);
    const auto& jb = j.at("basis");
    if (!jb.is_array() || jb.empty() || jb.size() > max_items_per_set)
        bad("basis must be a non-empty array of column vectors");
    std::vector<std::vector<mpz_class>> cols;
    for (const auto& jcol : jb) {
        if (!jcol.is_array() || jcol.size() != dim)
            bad("basis columns must have dim entries");
        std::vector<mpz_class> col;
        for (const auto& v : jcol) {
            if (!v.is_number_integer()) bad("basis entries must be integers");
            int64_t x = v.get<int64_t>();
            if (x > max_abs_entry || x < -max_abs_entry) bad("entry magnitude too large");
            col.emplace_back(static_cast<long>(x));
        }
        cols.push_back(std::move(col));
    }
    return int_lattice_from_columns(dim, std::move(cols));
}

}  // namespace

const char* kind_name(InstanceKind k) {
    switch (k) {
        case InstanceKind::group_sets: return "group_sets";
        case InstanceKind::basis_system: return "basis_system";
        case InstanceKind::block_lattice: return "block_lattice";
        case InstanceKind::int_lattice: return "int_lattice";
    }
    throw InternalError("unreachable instance kind");
}

Instance parse_instance(const json& j) {
    if (!j.is_object()) bad("top level must be a JSON object");
    if (j.contains("schema")) {
        const auto& s = j.at("schema");
        if (!s.is_string() || s.get<std::string>() != instance_schema_id)
            bad(std::string("schema must be '") + instance_schema_id + "'");
    }
    if (!j.contains("kind") || !j.at("kind").is_string())
        bad("missing string key 'kind'");
    std::string kind = j.at("kind").get<std::string>();

    Instance inst;
    if (kind == "group_sets") {
        inst.kind = InstanceKind::group_sets;
        inst.group_sets = parse_group_sets(j);
    } else if (kind == "basis_system") {
        inst.kind = InstanceKind::basis_system;
        inst.basis_system = parse_basis_system(j);
    } else if (kind == "block_lattice") {
        inst.kind = InstanceKind::block_lattice;
        inst.block_lattice = parse_block_lattice(j);
    } else if (kind == "int_lattice") {
        inst.kind = InstanceKind::int_lattice;
        inst.int_lattice = parse_int_lattice(j);
    } else {
        bad("unknown kind '" + kind + "'");
    }

    inst.canonical = j;
    inst.digest = sha256_hex(inst.canonical.dump());
    return inst;
}

Instance parse_instance_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        bad(std::string("not valid JSON: ") + e.what());
    }
    return parse_instance(j);
}

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance_text(buf.str());
}

json group_sets_to_json(const GroupSpec& g,
                        const std::vector<std::vector<GroupElement>>& sets) {
    json j;
    j["schema"] = instance_schema_id;
    j["kind"] = "group_sets";
    j["moduli"] = g.moduli();
    json jsets = json::array();
    for (const auto& set : sets) {
        json jset = json::array();
        for (const auto& e : set) jset.push_back(e);
        jsets.push_back(std::move(jset));
    }
    j["sets"] = std::move(jsets);
    return j;
}

namespace {

json fp_matrix_rows(const FpMatrix& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(i, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

json basis_system_to_json(const BasisSystem& b) {
    json j;
    j["schema"] = instance_schema_id;
    j["kind"] = "basis_system";
    j["p"] = b.p;
    j["k"] = b.k;
    j["r"] = b.r;
    json jb = json::array();
    for (const auto& m : b.bases) jb.push_back(fp_matrix_rows(m));
    j["bases"] = std::move(jb);
    return j;
}

json block_lattice_to_json(const BlockLattice& l) {
    json j;
    j["schema"] = instance_schema_id;
    j["kind"] = "block_lattice";
    j["p"] = l.p;
    j["k"] = l.k;
    j["r"] = l.r;
    j["generators"] = fp_matrix_rows(l.gens);
    return j;
}

json int_lattice_to_json(const IntLattice& l) {
    json j;
    j["schema"] = instance_schema_id;
    j["kind"] = "int_lattice";
    j["dim"] = l.dim;
    json jb = json::array();
    for (size_t c = 0; c < l.hnf.cols.size(); ++c) {
        json col = json::array();
        for (size_t i = 0; i < l.dim; ++i) {
            const mpz_class& v = l.hnf.cols[c][i];
            if (!v.fits_slong_p())
                throw InternalError("lattice entry exceeds serializable range");
            col.push_back(static_cast<int64_t>(v.get_si()));
        }
        jb.push_back(std::move(col));
    }
    j["basis"] = std::move(jb);
    return j;
}

}  // namespace sumcover

#include <doctest.h>

#include "sumcover/errors.hpp"
#include "sumcover/instance.hpp"
#include "sumcover/report.hpp"
#include "sumcover/sampling.hpp"

using namespace sumcover;

TEST_CASE("group_sets instances parse and validate") {
    json good = json::parse(R"({
        "kind": "group_sets",
        "moduli": [3],
        "sets": [[[1]], [[1]]]
    })");
    Instance inst = parse_instance(good);
    CHECK(inst.kind == InstanceKind::group_sets);
    REQUIRE(inst.group_sets.has_value());
    CHECK_FALSE(inst.group_sets->char0);
    CHECK(inst.group_sets->group->order() == 3);
    CHECK(inst.group_sets->sets.size() == 2);
    CHECK(inst.digest.size() == 64);

    // unreduced residue
    json bad1 = good;
    bad1["sets"][0][0][0] = 3;
    CHECK_THROWS_AS(parse_instance(bad1), ValidationError);
    // unknown key
    json bad2 = good;
    bad2["extra"] = 1;
    CHECK_THROWS_AS(parse_instance(bad2), ValidationError);
    // mixed zero and nonzero moduli
    json bad3 = good;
    bad3["moduli"] = {3, 0};
    CHECK_THROWS_AS(parse_instance(bad3), ValidationError);
    // wrong arity
    json bad4 = good;
    bad4["sets"] = json::parse(R"([[[1, 2]]])");
    CHECK_THROWS_AS(parse_instance(bad4), ValidationError);
    // float smuggled in
    json bad5 = good;
    bad5["sets"][0][0][0] = 1.5;
    CHECK_THROWS_AS(parse_instance(bad5), ValidationError);

    // char-0: all moduli zero
    json z = json::parse(R"({
        "kind": "group_sets",
        "moduli": [0, 0],
        "sets": [[[1, -2], [0, 4]]]
    })");
    Instance zi = parse_instance(z);
    CHECK(zi.group_sets->char0);
    CHECK(zi.group_sets->dim_z == 2);
    CHECK(zi.group_sets->sets_z[0][0] == IntVec{1, -2});
}

TEST_CASE("basis_system instances parse and validate") {
    json good = json::parse(R"({
        "kind": "basis_system",
        "p": 3, "k": 2, "r": 2,
        "bases": [[[1, 0], [0, 1]], [[1, 1], [1, 2]]]
    })");
    Instance inst = parse_instance(good);
    CHECK(inst.basis_system->k == 2);
    CHECK(inst.basis_system->bases[1].det() != 0);

    json singular = good;
    singular["bases"][1] = json::parse("[[1, 1], [1, 1]]");
    CHECK_THROWS_AS(parse_instance(singular), ValidationError);

    json notprime = good;
    notprime["p"] = 6;
    CHECK_THROWS_AS(parse_instance(notprime), ValidationError);

    json wrongcount = good;
    wrongcount["k"] = 3;
    CHECK_THROWS_AS(parse_instance(wrongcount), ValidationError);
}

TEST_CASE("lattice instances parse and validate") {
    json bl = json::parse(R"({
        "kind": "block_lattice",
        "p": 3, "k": 2, "r": 1,
        "generators": [[1, 2]]
    })");
    Instance inst = parse_instance(bl);
    CHECK(inst.block_lattice->dim() == 2);
    CHECK(inst.block_lattice->subspace_dim() == 1);

    json il = json::parse(R"({
        "kind": "int_lattice",
        "dim": 2,
        "basis": [[2, 0], [0, 2]]
    })");
    Instance ii = parse_instance(il);
    CHECK(ii.int_lattice->hnf.det == 4);

    json short_col = il;
    short_col["basis"] = json::parse("[[2, 0, 0], [0, 2, 0]]");
    CHECK_THROWS_AS(parse_instance(short_col), ValidationError);

    CHECK_THROWS_AS(parse_instance_text("{"), ValidationError);
    CHECK_THROWS_AS(parse_instance_text(R"({"kind": "mystery"})"),
                    ValidationError);
}

TEST_CASE("builders round-trip through the parser") {
    Rng rng(101);
    BasisSystem B = random_basis_system(rng, 5, 2, 2);
    json jb = basis_system_to_json(B);
    Instance ib = parse_instance(jb);
    CHECK(ib.basis_system->bases[0] == B.bases[0]);
    CHECK(ib.basis_system->bases[1] == B.bases[1]);

    BlockLattice L = random_oblique_lattice(rng, 3, 2, 2);
    Instance il = parse_instance(block_lattice_to_json(L));
    CHECK(lattice_leq(*il.block_lattice, L));
    CHECK(lattice_leq(L, *il.block_lattice));

    IntLattice zl = int_lattice_from_columns(2, {{2, 1}, {0, 3}});
    Instance iz = parse_instance(int_lattice_to_json(zl));
    CHECK(iz.int_lattice->hnf.det == zl.hnf.det);
    CHECK(iz.int_lattice->hnf.cols == zl.hnf.cols);
}

TEST_CASE("reports are deterministic and digest-stable") {
    ReportMeta meta;
    meta.command = "bounds";
    meta.input_digest = "abc";
    meta.seed = 7;

    json out;
    out["measured"] = 8;
    json r1 = make_report(meta, out);
    json r2 = make_report(meta, out);
    CHECK(r1.dump() == r2.dump());
    CHECK(r1.at("report_digest") == r2.at("report_digest"));
    CHECK_FALSE(r1.contains("wall_time_ms"));

    // timing is additive only: the digest ignores it
    ReportMeta timed = meta;
    timed.timing = true;
    timed.wall_ms = 123.4;
    json r3 = make_report(timed, out);
    CHECK(r3.at("report_digest") == r1.at("report_digest"));
    CHECK(r3.contains("wall_time_ms"));

    // different seed changes the digest
    ReportMeta other = meta;
    other.seed = 8;
    json r4 = make_report(other, out);
    CHECK(r4.at("report_digest") != r1.at("report_digest"));

    // key order is pinned
    auto it = r1.begin();
    CHECK(it.key() == "schema");
    ++it;
    CHECK(it.key() == "version");
    ++it;
    CHECK(it.key() == "command");
}

TEST_CASE("exact value encodings") {
    CHECK(big_json(mpz_class("123456789012345678901234567890")) ==
          json("123456789012345678901234567890"));
    mpq_class q(16, 9);
    q.canonicalize();
    json jq = rational_json(q);
    CHECK(jq.at("num") == "16");
    CHECK(jq.at("den") == "9");
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <memory>

#include "nxmds/error.hpp"
#include "nxmds/rng.hpp"
#include "nxmds/storage.hpp"

using namespace nxmds;

namespace {

std::shared_ptr<const MdsCode> make_code(std::size_t n, std::size_t k, std::uint64_t q, std::size_t N) {
    return std::make_shared<const MdsCode>(MdsCode::make(n, k, Field::from_order(q), N));
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("capacity and packing") {
    const auto code = make_code(4, 2, 5, 3);
    const auto& P = code->params();
    CHECK(capacity_bits(P) == 24);

    CHECK(ingest({}, P).is_zero());

    // 0xB4 = 1011 0100, read LSB first two bits per symbol: 00, 10, 11, 01
    const std::vector<std::uint8_t> one{0xB4};
    const Matrix x = ingest(one, P);
    CHECK(x.at(0, 0) == Elem{0});
    CHECK(x.at(0, 1) == Elem{1});
    CHECK(x.at(0, 2) == Elem{3});
    CHECK(x.at(1, 0) == Elem{2});
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            if (r * 3 + c >= 4) CHECK(x.at(r, c) == Elem{0});

    Rng rng(2);
    std::vector<std::uint8_t> full(3);
    for (auto& b : full) b = static_cast<std::uint8_t>(rng.next());
    CHECK(extract(ingest(full, P), P) == full);
    CHECK(extract(ingest(one, P), P) == std::vector<std::uint8_t>{0xB4, 0, 0});

    const std::vector<std::uint8_t> too_big(4, 0xFF);
    CHECK(code_of([&] { ingest(too_big, P); }) == ErrorCode::DataTooLarge);
}

TEST_CASE("packing roundtrip over an extension field") {
    const auto code = make_code(5, 2, 16, 7);
    const auto& P = code->params();
    Rng rng(3);
    std::vector<std::uint8_t> bytes(capacity_bits(P) / 8);
    for (auto& b : bytes) b = static_cast<std::uint8_t>(rng.next());
    CHECK(extract(ingest(bytes, P), P) == bytes);
}

TEST_CASE("honest state") {
    const auto code = make_code(4, 2, 5, 3);
    Rng rng(4);
    const Matrix x = Matrix::random(code->field(), 4, 3, rng);
    SystemState s(code, x);
    CHECK(s.stored() == code->encode(x));
    CHECK(true_error_set(s).empty());
    CHECK_FALSE(s.last_commit_stamp().has_value());

    ErrorPlan empty;
    s.corrupt(empty);
    CHECK(s.stored() == code->encode(x));
    CHECK(true_error_set(s).empty());

    SystemState blind(code, x, false);
    CHECK_FALSE(blind.has_ground_truth());
    CHECK(code_of([&] { true_error_set(blind); }) == ErrorCode::NoGroundTruth);
}

TEST_CASE("single-cell corruption changes exactly one symbol") {
    const auto code = make_code(4, 2, 5, 3);
    Rng rng(5);
    SystemState s(code, Matrix::random(code->field(), 4, 3, rng));
    ErrorPlan plan;
    plan.model.kind = ErrorModelKind::SingleCell;
    NodeError ne{2, Matrix(2, 3), 0};
    ne.error.at(0, 1) = Elem{3};
    plan.nodes.push_back(ne);
    s.corrupt(plan);
    std::size_t diffs = 0;
    for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 3; ++c) diffs += s.stored().at(r, c) != s.encoded().at(r, c);
    CHECK(diffs == 1);
    CHECK(s.stored().at(2, 1) == code->field().add(s.encoded().at(2, 1), Elem{3}));
    CHECK(true_error_set(s) == std::vector<std::size_t>{2});
    CHECK(s.plans().size() == 1);
    CHECK(s.plans()[0].committed);
    CHECK(s.plans()[0].nodes[0].rank == 1);
}

TEST_CASE("first-row pattern lands in the first node block") {
    const auto code = make_code(4, 2, 5, 3);
    const Field& F = code->field();
    Rng rng(6);
    SystemState s(code, Matrix::random(F, 4, 3, rng));
    ErrorPlan plan;
    NodeError ne{1, Matrix(2, 3), 0};
    const std::uint64_t e[2][3] = {{1, 2, 3}, {4, 0, 1}};
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 3; ++c) ne.error.at(r, c) = Elem{e[r][c]};
    plan.model.kind = ErrorModelKind::RandomDense;
    plan.nodes.push_back(ne);
    s.corrupt(plan);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 3; ++c) CHECK(F.sub(s.stored().at(r, c), s.encoded().at(r, c)) == Elem{e[r][c]});
    CHECK(s.node_content(2) == s.encoded().slice_rows(2, 2));
}

TEST_CASE("plan validation") {
    const auto code = make_code(4, 2, 5, 3);
    Rng rng(7);
    SystemState s(code, Matrix::random(code->field(), 4, 3, rng));

    ErrorPlan zero;
    zero.nodes.push_back({3, Matrix(2, 3), 0});
    CHECK(code_of([&] { s.corrupt(zero); }) == ErrorCode::DegenerateError);
    CHECK(true_error_set(s).empty());

    ErrorPlan wrong_rank;
    NodeError ne{1, Matrix(2, 3), 1};
    ne.error.at(0, 0) = Elem{1};
    ne.error.at(1, 1) = Elem{1};
    wrong_rank.nodes.push_back(ne);
    CHECK(code_of([&] { s.corrupt(wrong_rank); }) == ErrorCode::BadModel);

    ErrorPlan bad_shape;
    bad_shape.nodes.push_back({1, Matrix(3, 3), 0});
    CHECK(code_of([&] { s.corrupt(bad_shape); }) == ErrorCode::ShapeMismatch);

    ErrorPlan bad_node;
    NodeError nb{5, Matrix(2, 3), 0};
    nb.error.at(0, 0) = Elem{1};
    bad_node.nodes.push_back(nb);
    CHECK(code_of([&] { s.corrupt(bad_node); }) == ErrorCode::BadNodeId);

    ErrorPlan not_orthogonal;
    not_orthogonal.model.kind = ErrorModelKind::NullAgainstVector;
    not_orthogonal.model.target = {Elem{1}, Elem{1}, Elem{1}};
    NodeError no{1, Matrix(2, 3), 0};
    no.error.at(0, 0) = Elem{1};
    not_orthogonal.nodes.push_back(no);
    CHECK(code_of([&] { s.corrupt(not_orthogonal); }) == ErrorCode::BadModel);

    CHECK(true_error_set(s).empty());
}

TEST_CASE("sampled plans respect their model") {
    for (auto [n, k, q, N] : std::vector<std::tuple<std::size_t, std::size_t, std::uint64_t, std::size_t>>{
             {4, 2, 5, 3}, {6, 3, 7, 4}, {7, 3, 8, 5}, {5, 1, 5, 2}}) {
        const auto code = make_code(n, k, q, N);
        const Field& F = code->field();
        const std::size_t alpha = code->params().alpha();
        std::vector<ErrorModel> models;
        for (auto kind : {ErrorModelKind::SingleCell, ErrorModelKind::RandomDense, ErrorModelKind::Rank1})
            models.push_back({kind, 1, {}});
        for (std::size_t f = 1; f <= std::min(alpha, N); ++f) models.push_back({ErrorModelKind::RankF, f, {}});
        ErrorModel null_model{ErrorModelKind::NullAgainstVector, 1, {}};
        Rng target_rng(q);
        for (std::size_t j = 0; j < N; ++j) null_model.target.push_back(F.random(target_rng));
        models.push_back(null_model);

        Rng rng(n * 31 + q);
        for (const auto& model : models) {
            for (int rep = 0; rep < 1000; ++rep) {
                const std::size_t t = 1 + rng.uniform(n);
                ErrorPlan plan = sample_error_plan(model, t, rng, *code);
                REQUIRE(plan.nodes.size() == t);
                const auto ids = plan.node_set();
                REQUIRE(std::adjacent_find(ids.begin(), ids.end()) == ids.end());
                for (const auto& ne : plan.nodes) {
                    REQUIRE_FALSE(ne.error.is_zero());
                    const std::size_t r = linalg::rank(F, ne.error);
                    if (ne.rank != 0) REQUIRE(r == ne.rank);
                    switch (model.kind) {
                        case ErrorModelKind::SingleCell: {
                            std::size_t nz = 0;
                            for (Elem e : ne.error.data()) nz += e.value != 0;
                            REQUIRE(nz == 1);
                            break;
                        }
                        case ErrorModelKind::RandomDense:
                            for (std::size_t row = 0; row < alpha; ++row) REQUIRE_FALSE(ne.error.row_is_zero(row));
                            break;
                        case ErrorModelKind::Rank1: REQUIRE(r == 1); break;
                        case ErrorModelKind::RankF: REQUIRE(r == model.rank); break;
                        case ErrorModelKind::NullAgainstVector:
                            for (std::size_t row = 0; row < alpha; ++row)
                                REQUIRE(linalg::dot(F, ne.error.row(row), model.target) == F.zero());
                            break;
                    }
                }
                validate_plan(plan, *code);
            }
        }
    }
}

TEST_CASE("node choice is uniform over subsets") {
    const auto code = make_code(4, 2, 5, 3);
    Rng rng(8);
    std::map<std::vector<std::size_t>, int> counts;
    const int draws = 12000;
    for (int i = 0; i < draws; ++i) counts[sample_error_plan({}, 2, rng, *code).node_set()]++;
    CHECK(counts.size() == 6);
    for (const auto& [ids, c] : counts) {
        CHECK(c > 1700);
        CHECK(c < 2300);
    }
}

TEST_CASE("sampling errors") {
    const auto code = make_code(4, 2, 5, 1);
    Rng rng(9);
    CHECK(code_of([&] { sample_error_plan({ErrorModelKind::RankF, 2, {}}, 1, rng, *code); }) == ErrorCode::BadModel);
    CHECK(code_of([&] { sample_error_plan({ErrorModelKind::NullAgainstVector, 1, {Elem{1}}}, 1, rng, *code); }) ==
          ErrorCode::BadModel);
    CHECK(code_of([&] { sample_error_plan({}, 5, rng, *code); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("corruption is exact addition and honest nodes stay pure") {
    const auto code = make_code(6, 3, 7, 4);
    const Field& F = code->field();
    Rng rng(10);
    SystemState s(code, Matrix::random(F, 9, 4, rng));
    Matrix expected_error(18, 4);
    std::vector<std::size_t> hit;
    for (int round = 0; round < 5; ++round) {
        ErrorPlan plan = sample_error_plan({ErrorModelKind::RandomDense, 1, {}}, 2, rng, *code);
        for (const auto& ne : plan.nodes) {
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c = 0; c < 4; ++c) {
                    auto& cell = expected_error.at(code->node_offset(ne.node) + r, c);
                    cell = F.add(cell, ne.error.at(r, c));
                }
            hit.push_back(ne.node);
        }
        s.corrupt(std::move(plan));
    }
    CHECK(linalg::sub(F, s.stored(), s.encoded()) == expected_error);
    for (std::size_t i = 1; i <= 6; ++i)
        if (std::find(hit.begin(), hit.end(), i) == hit.end())
            CHECK(s.node_content(i) == s.encoded().slice_rows(code->node_offset(i), 3));
    CHECK(s.plans().size() == 5);
    CHECK(s.last_commit_stamp() == s.plans().back().commit_stamp);
}

TEST_CASE("state from node slices") {
    const auto code = make_code(4, 2, 5, 3);
    Rng rng(11);
    SystemState s(code, Matrix::random(code->field(), 4, 3, rng));
    std::vector<NodeContent> nodes;
    for (std::size_t i = 1; i <= 4; ++i) nodes.push_back({i, s.node_content(i)});
    const SystemState t = SystemState::from_nodes(code, nodes);
    CHECK(t.stored() == s.stored());
    CHECK_FALSE(t.has_ground_truth());
    nodes.pop_back();
    CHECK(code_of([&] { SystemState::from_nodes(code, nodes); }) == ErrorCode::TooFewNodes);
}

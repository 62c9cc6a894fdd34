#include "pqci.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "harness.hpp"

using pqci::Error;
using pqci::geometry::Circle;

struct pqci_context {
    std::string error;
};

namespace {

char* dup_cstr(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Maps exceptions from the C++ core onto status codes and stores the message
// on the context. Invalid inputs throw pqci::Error; anything else is internal.
template <typename Fn>
pqci_status guarded(pqci_context* ctx, Fn&& fn) {
    if (!ctx) return PQCI_ERR_INVALID_ARGUMENT;
    ctx->error.clear();
    try {
        return fn();
    } catch (const Error& e) {
        ctx->error = e.what();
        return PQCI_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        ctx->error = e.what();
        return PQCI_ERR_INTERNAL;
    } catch (...) {
        ctx->error = "unknown error";
        return PQCI_ERR_INTERNAL;
    }
}

pqci_status emit(char** report_json, const nlohmann::json& report) {
    if (!report_json) throw Error("report_json output pointer is null");
    *report_json = dup_cstr(report.dump(2));
    return PQCI_OK;
}

Circle parse_required(const char* text, const char* who) {
    if (!text) throw Error(std::string(who) + " circle is null");
    return Circle::parse(text);
}

}  // namespace

extern "C" {

pqci_context* pqci_context_new(void) { return new (std::nothrow) pqci_context; }

void pqci_context_free(pqci_context* ctx) { delete ctx; }

const char* pqci_context_error(const pqci_context* ctx) {
    return ctx ? ctx->error.c_str() : "";
}

const char* pqci_version(void) { return pqci::harness::kVersion; }

pqci_status pqci_decide(pqci_context* ctx, uint32_t t, const char* alice,
                        const char* bob, uint64_t seed, char** report_json) {
    return guarded(ctx, [&] {
        return emit(report_json,
                    pqci::harness::cmd_decide(t, parse_required(alice, "alice"),
                                              parse_required(bob, "bob"), seed));
    });
}

pqci_status pqci_verify(pqci_context* ctx, uint32_t t, uint64_t samples,
                        uint64_t seed, char** report_json) {
    return guarded(ctx, [&] {
        return emit(report_json, pqci::harness::cmd_verify(t, samples, seed));
    });
}

pqci_status pqci_attack(pqci_context* ctx, const char* strategy, uint32_t t,
                        const char* alice, const char* bob, const char* alice2,
                        uint64_t trials, uint32_t decoys, uint64_t seed,
                        char** report_json) {
    return guarded(ctx, [&] {
        if (!strategy) throw Error("strategy is null");
        std::optional<Circle> second;
        if (alice2) second = Circle::parse(alice2);
        return emit(report_json,
                    pqci::harness::cmd_attack(strategy, t, parse_required(alice, "alice"),
                                              parse_required(bob, "bob"), second, trials,
                                              decoys, seed));
    });
}

pqci_status pqci_cost(pqci_context* ctx, const uint32_t* t_values, size_t count,
                      char** report_json) {
    return guarded(ctx, [&] {
        if (!t_values && count) throw Error("t_values is null");
        std::vector<unsigned> ts(t_values, t_values + count);
        return emit(report_json, pqci::harness::cmd_cost(ts));
    });
}

pqci_status pqci_trace(pqci_context* ctx, uint32_t t, const char* alice,
                       const char* bob, uint64_t seed, char** report_json) {
    return guarded(ctx, [&] {
        return emit(report_json,
                    pqci::harness::cmd_trace(t, parse_required(alice, "alice"),
                                             parse_required(bob, "bob"), seed));
    });
}

pqci_status pqci_intersects(pqci_context* ctx, uint32_t t, const char* alice,
                            const char* bob, int* result) {
    return guarded(ctx, [&] {
        if (!result) throw Error("result output pointer is null");
        auto p = pqci::geometry::ProblemParams::for_precision(t);
        Circle a = parse_required(alice, "alice");
        Circle b = parse_required(bob, "bob");
        pqci::geometry::validate_circle(a, p);
        pqci::geometry::validate_circle(b, p);
        *result = pqci::geometry::intersects(a, b) ? 1 : 0;
        return PQCI_OK;
    });
}

void pqci_string_free(char* s) { std::free(s); }

}  // extern "C"

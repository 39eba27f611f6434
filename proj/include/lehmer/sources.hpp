#pragma once

#include <algorithm>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "lehmer/arith.hpp"
#include "lehmer/elliptic.hpp"
#include "lehmer/newform.hpp"

namespace lehmer {

// Single-writer-per-key cache: the first caller computes, later callers wait on the shared result.
template <class K, class V>
class Memo {
public:
    template <class F>
    V get(const K& key, F&& compute) {
        std::promise<V> promise;
        std::shared_future<V> future;
        bool owner = false;
        {
            std::lock_guard lock(mu_);
            auto it = map_.find(key);
            if (it == map_.end()) {
                future = promise.get_future().share();
                map_.emplace(key, future);
                owner = true;
            } else {
                future = it->second;
            }
        }
        if (owner) {
            try {
                promise.set_value(compute());
            } catch (...) {
                promise.set_exception(std::current_exception());
            }
        }
        return future.get();
    }

    void clear() {
        std::lock_guard lock(mu_);
        map_.clear();
    }

private:
    std::mutex mu_;
    std::map<K, std::shared_future<V>> map_;
};

struct LocalDatum {
    i64 a;    // a(p)
    int chi;  // character value at p
    bool operator==(const LocalDatum&) const = default;
};

// Hecke eigenform coefficients at primes coprime to the bad set.
class CoefficientSource {
public:
    virtual ~CoefficientSource() = default;
    [[nodiscard]] virtual std::string describe() const = 0;
    [[nodiscard]] virtual int weight() const = 0;
    [[nodiscard]] virtual const std::vector<i64>& bad_primes() const = 0;
    [[nodiscard]] virtual LocalDatum local(i64 p) const = 0;
    // a(n) read directly from a computed expansion, if one covers n.
    [[nodiscard]] virtual std::optional<i64> direct(i64 n) const = 0;

    [[nodiscard]] bool is_bad(i64 p) const {
        const auto& b = bad_primes();
        return std::binary_search(b.begin(), b.end(), p);
    }

    [[nodiscard]] bool coprime(i64 n) const {
        for (i64 p : bad_primes())
            if (n % p == 0) return false;
        return true;
    }

    // a(n) from the local data and the prime-power recurrence.
    [[nodiscard]] BigInt multiplicative(i64 n) const {
        if (n < 1) throw std::invalid_argument("coefficient index must be positive");
        if (!coprime(n)) throw BadPrimeError("n = " + std::to_string(n) + " is not coprime to the bad primes");
        BigInt out = 1;
        for (auto [p, e] : factorize(n).factors) {
            const auto loc = local(p);
            out *= prime_power_coeff_big(loc.a, loc.chi, weight(), p, e);
        }
        return out;
    }
};

class EtaSource final : public CoefficientSource {
public:
    explicit EtaSource(SingularForm form) : form_(std::move(form)), bad_(form_.bad_primes()) {}

    [[nodiscard]] std::string describe() const override {
        return "lambda=" + to_string(form_.lambda) + " via " + to_string(form_.product);
    }
    [[nodiscard]] int weight() const override { return form_.product.weight(); }
    [[nodiscard]] const std::vector<i64>& bad_primes() const override { return bad_; }

    [[nodiscard]] LocalDatum local(i64 p) const override {
        require_odd_prime(p, "EtaSource::local");
        if (is_bad(p)) throw BadPrimeError("p = " + std::to_string(p) + " is bad for " + describe());
        const auto s = series(checked::mul(p, p));
        const i128 ap = s->at(p), ap2 = s->at(p * p);
        const i128 pk = checked::pow(p, static_cast<unsigned>(weight() - 1));
        const i128 diff = ap * ap - ap2;
        if (diff != pk && diff != -pk)
            throw CorruptSeriesError("no character value fits a(p^2) at p = " + std::to_string(p));
        return {static_cast<i64>(ap), diff == pk ? 1 : -1};
    }

    [[nodiscard]] std::optional<i64> direct(i64 n) const override {
        if (n < 1 || n > kMaxSeriesLength) return std::nullopt;
        return series(n)->at(n);
    }

    [[nodiscard]] std::shared_ptr<const CoefficientSeries> series(i64 n) const {
        if (n > kMaxSeriesLength) throw std::out_of_range("eta expansion beyond the term budget");
        std::lock_guard lock(mu_);
        if (!series_ || series_->length() < n) {
            i64 len = std::max<i64>(kDefaultSeriesLength, series_ ? 2 * series_->length() : 0);
            len = std::min<i64>(std::max(len, n), kMaxSeriesLength);
            series_ = std::make_shared<const CoefficientSeries>(eta_product_series(form_.product, len));
        }
        return series_;
    }

    [[nodiscard]] const SingularForm& form() const { return form_; }

private:
    SingularForm form_;
    std::vector<i64> bad_;
    mutable std::mutex mu_;
    mutable std::shared_ptr<const CoefficientSeries> series_;
};

// Weight-3 coefficients a_lambda(p) = gamma (b^2 - 2p) with trivial character.
class PointCountSource final : public CoefficientSource {
public:
    explicit PointCountSource(const Rational& lambda) : curve_(integral_model(lambda)) {}

    [[nodiscard]] std::string describe() const override {
        return "lambda=" + to_string(curve_.lambda) + " via point counts on " + to_string(curve_.model);
    }
    [[nodiscard]] int weight() const override { return 3; }
    [[nodiscard]] const std::vector<i64>& bad_primes() const override { return curve_.bad_primes; }
    [[nodiscard]] LocalDatum local(i64 p) const override { return {a_lambda(curve_, p), 1}; }
    [[nodiscard]] std::optional<i64> direct(i64) const override { return std::nullopt; }

private:
    LambdaCurve curve_;
};

inline std::shared_ptr<const CoefficientSource> coefficient_source(const Rational& lambda) {
    static Memo<std::pair<i64, i64>, std::shared_ptr<const CoefficientSource>> cache;
    require_lambda(lambda);
    return cache.get({lambda.numerator(), lambda.denominator()}, [&]() -> std::shared_ptr<const CoefficientSource> {
        if (const auto* f = find_singular_form(lambda)) return std::make_shared<EtaSource>(*f);
        return std::make_shared<PointCountSource>(lambda);
    });
}

}  // namespace lehmer

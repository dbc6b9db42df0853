#include "cxosc/cxosc.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "cxosc/error.hpp"
#include "cxosc/verify.hpp"
#include "cxosc/wigner.hpp"

struct cxosc_grid {
    cxosc::GridPtr grid;
};

struct cxosc_basis {
    cxosc::BasisSet basis;
};

struct cxosc_coeffs {
    cxosc::CoefficientVector coeffs;
};

struct cxosc_frame {
    cxosc::DensityCurrentFrame frame;
};

struct cxosc_wigner {
    cxosc::WignerField field;
};

namespace {

thread_local std::string last_error;

int fail(cxosc_status status, const char* message)
{
    last_error = message;
    return status;
}

template <class Fn>
int guard(Fn&& fn)
{
    try {
        fn();
        last_error.clear();
        return CXOSC_OK;
    } catch (const cxosc::ArgumentError& e) {
        return fail(CXOSC_ERR_ARGUMENT, e.what());
    } catch (const cxosc::ParameterDomainError& e) {
        return fail(CXOSC_ERR_PARAMETER_DOMAIN, e.what());
    } catch (const cxosc::ResolutionError& e) {
        return fail(CXOSC_ERR_RESOLUTION, e.what());
    } catch (const cxosc::SizeError& e) {
        return fail(CXOSC_ERR_SIZE, e.what());
    } catch (const cxosc::NormalizationError& e) {
        return fail(CXOSC_ERR_NORMALIZATION, e.what());
    } catch (const cxosc::ConsistencyError& e) {
        return fail(CXOSC_ERR_CONSISTENCY, e.what());
    } catch (const cxosc::UnsupportedRegimeError& e) {
        return fail(CXOSC_ERR_UNSUPPORTED, e.what());
    } catch (const std::exception& e) {
        return fail(CXOSC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(CXOSC_ERR_INTERNAL, "unknown error");
    }
}

template <class T>
const T& deref(const T* ptr, const char* what)
{
    if (ptr == nullptr)
        throw cxosc::ArgumentError(std::string("null ") + what);
    return *ptr;
}

template <class T>
void require_out(T** out)
{
    if (out == nullptr)
        throw cxosc::ArgumentError("null output handle pointer");
    *out = nullptr;
}

void require_capacity(size_t capacity, size_t needed)
{
    if (capacity < needed)
        throw cxosc::SizeError("output buffer holds " + std::to_string(capacity) +
                               " values, need " + std::to_string(needed));
}

cxosc::PotentialParams to_params(const cxosc_params* p)
{
    const auto& raw = deref(p, "params");
    return cxosc::PotentialParams{raw.a, raw.b, raw.c, raw.lambda};
}

cxosc::PhaseSpaceGrid to_phase(const cxosc_phase_grid* g)
{
    const auto& raw = deref(g, "phase grid");
    return cxosc::PhaseSpaceGrid{raw.x_extent, raw.p_extent, raw.x_count, raw.p_count};
}

std::vector<cxosc::complex> to_complex(const double* re, const double* im, size_t count)
{
    if (count > 0 && re == nullptr)
        throw cxosc::ArgumentError("null real-part array");
    std::vector<cxosc::complex> out(count);
    for (size_t i = 0; i < count; ++i)
        out[i] = cxosc::complex(re[i], im != nullptr ? im[i] : 0.0);
    return out;
}

void split_complex(const std::vector<cxosc::complex>& values, double* re, double* im,
                   size_t capacity)
{
    require_capacity(capacity, values.size());
    for (size_t i = 0; i < values.size(); ++i) {
        if (re != nullptr)
            re[i] = values[i].real();
        if (im != nullptr)
            im[i] = values[i].imag();
    }
}

std::vector<std::string> split_suites(const char* text)
{
    std::vector<std::string> out;
    std::string current;
    for (const char* c = text; *c != '\0'; ++c) {
        if (*c == ',') {
            if (!current.empty())
                out.push_back(current);
            current.clear();
        } else if (*c != ' ') {
            current.push_back(*c);
        }
    }
    if (!current.empty())
        out.push_back(current);
    return out;
}

} // namespace

extern "C" {

const char* cxosc_last_error(void)
{
    return last_error.c_str();
}

const char* cxosc_version(void)
{
    return "1.0.0";
}

int cxosc_validate_params(const cxosc_params* params)
{
    return guard([&] { cxosc::validate(to_params(params)); });
}

int cxosc_consistent_lambda(const cxosc_params* params, double* lambda, double* gap)
{
    return guard([&] {
        const auto p = cxosc::validate(to_params(params));
        if (lambda)
            *lambda = cxosc::consistent_lambda(p);
        if (gap)
            *gap = cxosc::lambda_constraint_gap(p);
    });
}

int cxosc_potential_values(const cxosc_params* params, const double* x, size_t count,
                           double* re_out, double* im_out)
{
    return guard([&] {
        const auto p = cxosc::validate(to_params(params));
        if (count > 0 && (x == nullptr || re_out == nullptr || im_out == nullptr))
            throw cxosc::ArgumentError("null array");
        for (size_t i = 0; i < count; ++i) {
            const auto v = cxosc::potential_value(p, x[i]);
            re_out[i] = v.real();
            im_out[i] = v.imag();
        }
    });
}

int cxosc_alpha_values(const cxosc_params* params, const double* x, size_t count, double* out)
{
    return guard([&] {
        const auto p = cxosc::validate(to_params(params));
        if (count > 0 && (x == nullptr || out == nullptr))
            throw cxosc::ArgumentError("null array");
        for (size_t i = 0; i < count; ++i)
            out[i] = cxosc::alpha(p, x[i]);
    });
}

int cxosc_grid_create(double extent, double step, cxosc_grid** out)
{
    return guard([&] {
        require_out(out);
        *out = new cxosc_grid{std::make_shared<const cxosc::SpatialGrid>(extent, step)};
    });
}

int cxosc_grid_create_default(int max_index, double step, cxosc_grid** out)
{
    return guard([&] {
        require_out(out);
        *out = new cxosc_grid{std::make_shared<const cxosc::SpatialGrid>(
            cxosc::SpatialGrid::for_max_index(max_index, step))};
    });
}

void cxosc_grid_destroy(cxosc_grid* grid)
{
    delete grid;
}

size_t cxosc_grid_size(const cxosc_grid* grid)
{
    return grid ? static_cast<size_t>(grid->grid->size()) : 0;
}

double cxosc_grid_extent(const cxosc_grid* grid)
{
    return grid ? grid->grid->extent() : 0.0;
}

double cxosc_grid_step(const cxosc_grid* grid)
{
    return grid ? grid->grid->step() : 0.0;
}

int cxosc_grid_nodes(const cxosc_grid* grid, double* out, size_t capacity)
{
    return guard([&] {
        const auto& nodes = deref(grid, "grid").grid->nodes();
        require_capacity(out ? capacity : 0, nodes.size());
        std::copy(nodes.begin(), nodes.end(), out);
    });
}

int cxosc_basis_build(const cxosc_params* params, int max_index, const cxosc_grid* grid,
                      cxosc_basis** out)
{
    return guard([&] {
        require_out(out);
        const auto& g = deref(grid, "grid");
        *out = new cxosc_basis{cxosc::build_basis(to_params(params), max_index, g.grid)};
    });
}

void cxosc_basis_destroy(cxosc_basis* basis)
{
    delete basis;
}

int cxosc_basis_size(const cxosc_basis* basis)
{
    return basis ? basis->basis.size() : 0;
}

double cxosc_basis_energy(const cxosc_basis* basis, int n)
{
    if (basis == nullptr || n < 0 || n >= basis->basis.size())
        return std::nan("");
    return basis->basis.energies()[static_cast<size_t>(n)];
}

double cxosc_basis_normalization_residual(const cxosc_basis* basis)
{
    return basis ? basis->basis.normalization_residual() : std::nan("");
}

int cxosc_basis_state(const cxosc_basis* basis, int n, double* re, double* im, size_t capacity)
{
    return guard([&] {
        const auto& b = deref(basis, "basis").basis;
        if (n < 0 || n >= b.size())
            throw cxosc::ArgumentError("basis index out of range");
        split_complex(b.states()[static_cast<size_t>(n)].amplitudes, re, im, capacity);
    });
}

int cxosc_basis_gram(const cxosc_basis* basis, double* re, double* im, size_t capacity)
{
    return guard([&] {
        const auto gram = cxosc::gram_matrix(deref(basis, "basis").basis);
        split_complex(gram.data, re, im, capacity);
    });
}

int cxosc_basis_gram_deviation(const cxosc_basis* basis, double* out)
{
    return guard([&] {
        if (out == nullptr)
            throw cxosc::ArgumentError("null output");
        *out = cxosc::identity_deviation(cxosc::gram_matrix(deref(basis, "basis").basis));
    });
}

int cxosc_coeffs_binomial(int n, double p, int r, cxosc_coeffs** out)
{
    return guard([&] {
        require_out(out);
        *out = new cxosc_coeffs{cxosc::binomial_coefficients({n, p, r})};
    });
}

int cxosc_coeffs_poisson(double z_re, double z_im, int r, cxosc_coeffs** out)
{
    return guard([&] {
        require_out(out);
        *out = new cxosc_coeffs{
            cxosc::poisson_coefficients(cxosc::make_poisson_spec({z_re, z_im}, r))};
    });
}

int cxosc_coeffs_single(int r, cxosc_coeffs** out)
{
    return guard([&] {
        require_out(out);
        if (r < 0)
            throw cxosc::ArgumentError("eigenstate index must be non-negative");
        *out = new cxosc_coeffs{cxosc::single_state_coefficients(r)};
    });
}

int cxosc_coeffs_create(int offset, const double* re, const double* im, size_t count,
                        cxosc_coeffs** out)
{
    return guard([&] {
        require_out(out);
        if (count == 0)
            throw cxosc::SizeError("empty coefficient vector");
        *out = new cxosc_coeffs{
            cxosc::CoefficientVector::with_equal_duals(offset, to_complex(re, im, count))};
    });
}

int cxosc_coeffs_analyze(const cxosc_basis* basis, const double* re, const double* im,
                         size_t count, cxosc_coeffs** out)
{
    return guard([&] {
        require_out(out);
        const auto& b = deref(basis, "basis").basis;
        const cxosc::WaveField field(b.grid(), to_complex(re, im, count));
        *out = new cxosc_coeffs{cxosc::fourier_analyze(field, b)};
    });
}

int cxosc_coeffs_evolve(const cxosc_coeffs* coeffs, double t, cxosc_coeffs** out)
{
    return guard([&] {
        require_out(out);
        *out = new cxosc_coeffs{cxosc::evolve(deref(coeffs, "coefficients").coeffs, t)};
    });
}

void cxosc_coeffs_destroy(cxosc_coeffs* coeffs)
{
    delete coeffs;
}

int cxosc_coeffs_count(const cxosc_coeffs* coeffs)
{
    return coeffs ? coeffs->coeffs.count() : 0;
}

int cxosc_coeffs_offset(const cxosc_coeffs* coeffs)
{
    return coeffs ? coeffs->coeffs.offset : 0;
}

int cxosc_coeffs_get(const cxosc_coeffs* coeffs, double* re, double* im, size_t capacity)
{
    return guard([&] {
        split_complex(deref(coeffs, "coefficients").coeffs.coefficients, re, im, capacity);
    });
}

int cxosc_coeffs_binorm(const cxosc_coeffs* coeffs, double* re, double* im)
{
    return guard([&] {
        const auto value = deref(coeffs, "coefficients").coeffs.binorm();
        if (re)
            *re = value.real();
        if (im)
            *im = value.imag();
    });
}

int cxosc_coeffs_energy(const cxosc_coeffs* coeffs, double* energy, double* energy_offset_free)
{
    return guard([&] {
        const auto& c = deref(coeffs, "coefficients").coeffs;
        if (energy)
            *energy = cxosc::energy_expectation(c);
        if (energy_offset_free)
            *energy_offset_free = cxosc::energy_expectation_offset_free(c);
    });
}

int cxosc_coeffs_synthesize(const cxosc_coeffs* coeffs, const cxosc_basis* basis, double* re,
                            double* im, double* dual_re, double* dual_im, size_t capacity)
{
    return guard([&] {
        const auto s = cxosc::synthesize(deref(coeffs, "coefficients").coeffs,
                                         deref(basis, "basis").basis);
        split_complex(s.state.amplitudes, re, im, capacity);
        split_complex(s.dual.amplitudes, dual_re, dual_im, capacity);
    });
}

int cxosc_coeffs_oscillator_field(const cxosc_coeffs* coeffs, const cxosc_grid* grid, double* re,
                                  double* im, size_t capacity)
{
    return guard([&] {
        const auto field = cxosc::oscillator_superposition(deref(coeffs, "coefficients").coeffs,
                                                           deref(grid, "grid").grid);
        split_complex(field.amplitudes, re, im, capacity);
    });
}

int cxosc_frame_compute(const cxosc_coeffs* coeffs, const cxosc_basis* basis, double t,
                        cxosc_frame** out)
{
    return guard([&] {
        require_out(out);
        *out = new cxosc_frame{cxosc::density_current_frame(
            deref(coeffs, "coefficients").coeffs, deref(basis, "basis").basis, t)};
    });
}

void cxosc_frame_destroy(cxosc_frame* frame)
{
    delete frame;
}

int cxosc_frame_column_values(const cxosc_frame* frame, cxosc_frame_column column, double* out,
                              size_t capacity)
{
    return guard([&] {
        const auto& f = deref(frame, "frame").frame;
        const size_t m = f.rho.size();
        require_capacity(out ? capacity : 0, m);
        for (size_t i = 0; i < m; ++i) {
            switch (column) {
            case CXOSC_COLUMN_RHO_B_RE: out[i] = f.rho_b[i].real(); break;
            case CXOSC_COLUMN_RHO_B_IM: out[i] = f.rho_b[i].imag(); break;
            case CXOSC_COLUMN_CURRENT_B_RE: out[i] = f.current_b[i].real(); break;
            case CXOSC_COLUMN_CURRENT_B_IM: out[i] = f.current_b[i].imag(); break;
            case CXOSC_COLUMN_RHO: out[i] = f.rho[i]; break;
            case CXOSC_COLUMN_CURRENT: out[i] = f.current[i]; break;
            default: throw cxosc::ArgumentError("unknown frame column");
            }
        }
    });
}

int cxosc_frame_binorm(const cxosc_frame* frame, double* re, double* im)
{
    return guard([&] {
        const auto& f = deref(frame, "frame").frame;
        const auto value = cxosc::integrate(f.grid->rule(), f.rho_b);
        if (re)
            *re = value.real();
        if (im)
            *im = value.imag();
    });
}

int cxosc_continuity(const cxosc_coeffs* coeffs, const cxosc_basis* basis, double t, double dt,
                     cxosc_continuity_summary* out)
{
    return guard([&] {
        if (out == nullptr)
            throw cxosc::ArgumentError("null output");
        const auto res = cxosc::continuity_residuals(deref(coeffs, "coefficients").coeffs,
                                                     deref(basis, "basis").basis, t, dt);
        const auto max_abs = [](const auto& v) {
            double m = 0.0;
            for (const auto& z : v)
                m = std::max(m, static_cast<double>(std::abs(z)));
            return m;
        };
        *out = cxosc_continuity_summary{max_abs(res.biorthogonal), max_abs(res.flux_divergence_b),
                                        max_abs(res.conventional),
                                        max_abs(res.conventional_unweighted),
                                        max_abs(res.flux_divergence)};
    });
}

int cxosc_phase_grid_default(int max_index, double spatial_step, cxosc_phase_grid* out)
{
    return guard([&] {
        if (out == nullptr)
            throw cxosc::ArgumentError("null output");
        const auto g = cxosc::default_phase_grid(max_index, spatial_step);
        *out = cxosc_phase_grid{g.x_extent, g.p_extent, g.x_count, g.p_count};
    });
}

int cxosc_wigner_quadrature(const cxosc_coeffs* coeffs, const cxosc_grid* grid,
                            const cxosc_phase_grid* phase, int workers, cxosc_wigner** out)
{
    return guard([&] {
        require_out(out);
        const auto field = cxosc::oscillator_superposition(deref(coeffs, "coefficients").coeffs,
                                                           deref(grid, "grid").grid);
        *out = new cxosc_wigner{cxosc::wigner_by_quadrature(field, to_phase(phase), workers)};
    });
}

int cxosc_wigner_quadrature_field(const cxosc_grid* grid, const double* re, const double* im,
                                  size_t count, const cxosc_phase_grid* phase, int workers,
                                  cxosc_wigner** out)
{
    return guard([&] {
        require_out(out);
        const cxosc::WaveField field(deref(grid, "grid").grid, to_complex(re, im, count));
        *out = new cxosc_wigner{cxosc::wigner_by_quadrature(field, to_phase(phase), workers)};
    });
}

int cxosc_wigner_closed_form(const cxosc_coeffs* coeffs, const cxosc_phase_grid* phase,
                             int workers, cxosc_wigner** out)
{
    return guard([&] {
        require_out(out);
        *out = new cxosc_wigner{cxosc::wigner_by_closed_form(
            deref(coeffs, "coefficients").coeffs, to_phase(phase), workers)};
    });
}

void cxosc_wigner_destroy(cxosc_wigner* wigner)
{
    delete wigner;
}

int cxosc_wigner_phase_grid(const cxosc_wigner* wigner, cxosc_phase_grid* out)
{
    return guard([&] {
        const auto& g = deref(wigner, "wigner").field.grid;
        if (out == nullptr)
            throw cxosc::ArgumentError("null output");
        *out = cxosc_phase_grid{g.x_extent, g.p_extent, g.x_count, g.p_count};
    });
}

int cxosc_wigner_values(const cxosc_wigner* wigner, double* out, size_t capacity)
{
    return guard([&] {
        const auto& values = deref(wigner, "wigner").field.values;
        require_capacity(out ? capacity : 0, values.size());
        std::copy(values.begin(), values.end(), out);
    });
}

double cxosc_wigner_imaginary_residue(const cxosc_wigner* wigner)
{
    return wigner ? wigner->field.imaginary_residue : std::nan("");
}

int cxosc_wigner_classicality(const cxosc_wigner* wigner, cxosc_classicality* out)
{
    return guard([&] {
        if (out == nullptr)
            throw cxosc::ArgumentError("null output");
        const auto r = cxosc::classicality_report(deref(wigner, "wigner").field);
        *out = cxosc_classicality{r.min_value, r.min_x, r.min_p, r.negative_volume};
    });
}

int cxosc_wigner_marginals(const cxosc_wigner* wigner, double* position, size_t x_capacity,
                           double* momentum, size_t p_capacity)
{
    return guard([&] {
        const auto m = cxosc::marginals(deref(wigner, "wigner").field);
        require_capacity(position ? x_capacity : 0, m.position.size());
        require_capacity(momentum ? p_capacity : 0, m.momentum.size());
        std::copy(m.position.begin(), m.position.end(), position);
        std::copy(m.momentum.begin(), m.momentum.end(), momentum);
    });
}

int cxosc_wigner_max_difference(const cxosc_wigner* lhs, const cxosc_wigner* rhs, double* out)
{
    return guard([&] {
        const auto& a = deref(lhs, "wigner").field;
        const auto& b = deref(rhs, "wigner").field;
        if (out == nullptr)
            throw cxosc::ArgumentError("null output");
        if (a.values.size() != b.values.size())
            throw cxosc::SizeError("Wigner fields differ in shape");
        double worst = 0.0;
        for (size_t i = 0; i < a.values.size(); ++i)
            worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
        *out = worst;
    });
}

int cxosc_photon_added_fidelity(double z_re, double z_im, const cxosc_coeffs* coeffs, double* out)
{
    return guard([&] {
        if (out == nullptr)
            throw cxosc::ArgumentError("null output");
        *out = cxosc::photon_added_fidelity({z_re, z_im}, deref(coeffs, "coefficients").coeffs);
    });
}

int cxosc_verify(const cxosc_verify_options* options, char** report, int* all_passed)
{
    return guard([&] {
        if (report == nullptr)
            throw cxosc::ArgumentError("null report pointer");
        *report = nullptr;
        const auto& raw = deref(options, "verify options");
        cxosc::VerifyOptions opts;
        opts.params = to_params(&raw.params);
        if (raw.lambdas != nullptr)
            opts.lambdas.assign(raw.lambdas, raw.lambdas + raw.lambda_count);
        if (raw.grid_step > 0.0)
            opts.grid_step = raw.grid_step;
        opts.grid_extent = raw.grid_extent;
        if (raw.suites != nullptr)
            opts.suites = split_suites(raw.suites);
        opts.workers = raw.workers;

        const auto results = cxosc::run_verification(opts);
        nlohmann::ordered_json doc;
        doc["checks"] = nlohmann::ordered_json::array();
        bool ok = true;
        for (const auto& r : results) {
            doc["checks"].push_back({{"suite", r.suite},
                                     {"name", r.name},
                                     {"measured", r.measured},
                                     {"tolerance", r.tolerance},
                                     {"passed", r.passed}});
            ok = ok && r.passed;
        }
        doc["passed"] = ok;
        const std::string text = doc.dump(2);
        char* buffer = new char[text.size() + 1];
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        *report = buffer;
        if (all_passed)
            *all_passed = ok ? 1 : 0;
    });
}

void cxosc_string_free(char* text)
{
    delete[] text;
}

} // extern "C"

#include "qotac/csv.hpp"

#include <algorithm>
#include <cstdio>

namespace qotac {

std::string format_g17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_cdf_csv(std::ostream& out, const CdfResult& cdf) {
  out << "scheme,stream,function,nmse,cdf_level\n";
  for (const CdfSeries& series : cdf.series) {
    const std::string scheme = scheme_name(series.scheme);
    for (std::size_t i = 0; i < series.nmse.size(); ++i) {
      out << scheme << ',' << series.stream << ',' << series.function << ','
          << format_g17(series.nmse[i]) << ',' << format_g17(series.level[i])
          << '\n';
    }
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  out << "snr_db,scheme,mean_nmse,mean_nmse_db,n_trials,stderr_nmse\n";
  for (const SweepSeries& series : sweep.series) {
    const std::string scheme = scheme_name(series.scheme);
    std::vector<SweepPoint> points = series.points;
    std::sort(points.begin(), points.end(),
              [](const SweepPoint& a, const SweepPoint& b) {
                return a.snr_db < b.snr_db;
              });
    for (const SweepPoint& p : points) {
      out << format_g17(p.snr_db) << ',' << scheme << ','
          << format_g17(p.mean_nmse) << ',' << format_g17(p.mean_nmse_db)
          << ',' << p.n_trials << ',' << format_g17(p.stderr_nmse) << '\n';
    }
  }
}

namespace {

class DumpWriter {
 public:
  explicit DumpWriter(std::ostream& out) : out_(out) {
    out_ << "scheme,quantity,row,col,part,value\n";
  }

  void scalar(const std::string& scheme, const std::string& quantity,
              double value) {
    entry(scheme, quantity, 0, 0, value, 0.0);
  }

  void vector(const std::string& scheme, const std::string& quantity,
              const RVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      entry(scheme, quantity, i, 0, v(i), 0.0);
    }
  }

  void vector(const std::string& scheme, const std::string& quantity,
              const CVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      entry(scheme, quantity, i, 0, v(i).real(), v(i).imag());
    }
  }

  void matrix(const std::string& scheme, const std::string& quantity,
              const CMatrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        entry(scheme, quantity, r, c, m(r, c).real(), m(r, c).imag());
      }
    }
  }

 private:
  void entry(const std::string& scheme, const std::string& quantity,
             Eigen::Index row, Eigen::Index col, double re, double im) {
    out_ << scheme << ',' << quantity << ',' << row << ',' << col << ",re,"
         << format_g17(re) << '\n';
    out_ << scheme << ',' << quantity << ',' << row << ',' << col << ",im,"
         << format_g17(im) << '\n';
  }

  std::ostream& out_;
};

}  // namespace

void write_trial_dump_csv(std::ostream& out, const TrialTrace& trace,
                          const TrialResult& result) {
  DumpWriter w(out);

  w.vector("shared", "d_f", trace.d_f);
  if (trace.has_g) w.vector("shared", "d_g", trace.d_g);
  w.vector("shared", "s_f", trace.s_f);
  if (trace.has_g) w.vector("shared", "s_g", trace.s_g);
  w.vector("shared", "x_f", trace.x_f);
  if (trace.has_g) w.vector("shared", "x_g", trace.x_g);
  w.matrix("shared", "H", trace.channel_1);
  w.vector("shared", "w", trace.noise_1);

  if (trace.has_quadrature && result.quadrature) {
    const TrialRecord& rec = *result.quadrature;
    w.scalar("quadrature", "stream_scale", trace.scale_quad);
    w.vector("quadrature", "y", trace.y_quad);
    w.vector("quadrature", "yd", trace.yd);
    w.vector("quadrature", "u_f", trace.u_f);
    w.vector("quadrature", "u_g", trace.u_g);
    w.scalar("quadrature", "z_f", trace.z_f);
    w.scalar("quadrature", "z_g", trace.z_g);
    w.scalar("quadrature", "sum_f", trace.sum_f);
    w.scalar("quadrature", "sum_g", trace.sum_g);
    w.scalar("quadrature", "f_est", rec.f_est);
    w.scalar("quadrature", "f_true", rec.f_true);
    w.scalar("quadrature", "nmse_f", rec.nmse_f);
    if (rec.g_est) {
      w.scalar("quadrature", "g_est", *rec.g_est);
      w.scalar("quadrature", "g_true", *rec.g_true);
      w.scalar("quadrature", "nmse_g", *rec.nmse_g);
    }
  }

  if (trace.has_conventional && result.conventional) {
    const TrialRecord& rec = *result.conventional;
    if (trace.has_second_use) {
      w.matrix("conventional", "H2", trace.channel_2);
      w.vector("conventional", "w2", trace.noise_2);
    }
    w.vector("conventional", "y_f", trace.y_conv_f);
    w.vector("conventional", "u_f", trace.u_conv_f);
    w.scalar("conventional", "z_f", trace.zc_f);
    w.scalar("conventional", "sum_f", trace.sumc_f);
    w.scalar("conventional", "f_est", rec.f_est);
    w.scalar("conventional", "f_true", rec.f_true);
    w.scalar("conventional", "nmse_f", rec.nmse_f);
    if (trace.has_second_use && rec.g_est) {
      w.vector("conventional", "y_g", trace.y_conv_g);
      w.vector("conventional", "u_g", trace.u_conv_g);
      w.scalar("conventional", "z_g", trace.zc_g);
      w.scalar("conventional", "sum_g", trace.sumc_g);
      w.scalar("conventional", "g_est", *rec.g_est);
      w.scalar("conventional", "g_true", *rec.g_true);
      w.scalar("conventional", "nmse_g", *rec.nmse_g);
    }
  }
}

}  // namespace qotac

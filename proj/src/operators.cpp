#include "spie/operators.hpp"

#include <atomic>
#include <cstdint>
#include <fstream>
#include <thread>

#include "spie/kernels.hpp"

namespace spie {

namespace {

// Independent rows pulled from a shared counter; results do not depend on the
// worker count.
template <typename Fn>
void parallel_rows(int n_rows, int threads, Fn&& body) {
  if (threads <= 1) {
    for (int m = 0; m < n_rows; ++m) body(m);
    return;
  }
  std::atomic<int> next{0};
  auto work = [&] {
    for (;;) {
      const int m = next.fetch_add(1);
      if (m >= n_rows) return;
      body(m);
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (int i = 0; i < threads; ++i) pool.emplace_back(work);
}

}  // namespace

Eigen::MatrixXd OperatorSet::internal_L(int object) const {
  const auto [b, e] = object_ranges.at(object);
  return L.block(b, b, e - b, e - b);
}

Eigen::MatrixXd OperatorSet::internal_Mpv(int object) const {
  const auto [b, e] = object_ranges.at(object);
  return Mpv.block(b, b, e - b, e - b);
}

OperatorSet assemble_operators(const SurfaceMesh& mesh, int threads) {
  const int n = mesh.n_triangles();
  if (n == 0) throw InputError("assemble_operators: empty mesh");

  std::vector<Panel> panels;
  panels.reserve(n);
  for (int t = 0; t < n; ++t) panels.push_back(Panel::from_triangle(mesh, t));

  OperatorSet ops;
  ops.L.resize(n, n);
  ops.Mpv.resize(n, n);
  ops.area.resize(n);
  for (int t = 0; t < n; ++t) ops.area(t) = panels[t].area;
  for (const auto& obj : mesh.objects)
    ops.object_ranges.emplace_back(obj.tri_begin, obj.tri_end);

  parallel_rows(n, threads, [&](int m) {
    const Vec3& obs = panels[m].centroid;
    const double am = panels[m].area;
    for (int s = 0; s < n; ++s) {
      ops.L(m, s) = am * single_layer_integral(obs, panels[s]);
      ops.Mpv(m, s) = am * double_layer_integral(obs, panels[s]);
    }
  });
  return ops;
}

void dump_matrix(const Eigen::Ref<const Eigen::MatrixXd>& m,
                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  const int32_t rows = static_cast<int32_t>(m.rows());
  const int32_t cols = static_cast<int32_t>(m.cols());
  out.write(reinterpret_cast<const char*>(&rows), 4);
  out.write(reinterpret_cast<const char*>(&cols), 4);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const double v = m(r, c);
      out.write(reinterpret_cast<const char*>(&v), 8);
    }
  if (!out) throw InputError("write failed for " + path.string());
}

Eigen::MatrixXd read_matrix_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  int32_t rows = 0, cols = 0;
  in.read(reinterpret_cast<char*>(&rows), 4);
  in.read(reinterpret_cast<char*>(&cols), 4);
  if (!in || rows < 0 || cols < 0)
    throw InputError("corrupt matrix dump " + path.string());
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      double v;
      in.read(reinterpret_cast<char*>(&v), 8);
      if (!in) throw InputError("truncated matrix dump " + path.string());
      m(r, c) = v;
    }
  return m;
}

}  // namespace spie

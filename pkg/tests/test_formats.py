import numpy as np
import pytest

from ldnkit import bases, formats, lti, sim
from ldnkit.errors import FormatError, NonUniformSignalError


class TestSystemDocument:
    def test_round_trip_exact(self):
        rng = np.random.default_rng(43)
        sys = lti.LtiSystem(
            a=rng.standard_normal((4, 4)) * np.pi,
            b=rng.standard_normal(4) / 3.0,
            theta=0.3,
        )
        doc = formats.document_from_system(sys, "custom", {"note": "round trip"})
        parsed = formats.parse_system_document(doc.to_text())
        assert np.array_equal(parsed.a, sys.a)
        assert np.array_equal(parsed.b, sys.b)
        assert parsed.theta == sys.theta
        assert parsed.metadata["note"] == "round trip"

    def test_seventeen_significant_digits(self):
        assert formats.full_float(1.0 / 3.0) == "0.33333333333333331"
        assert float(formats.full_float(np.pi)) == np.pi

    def test_file_round_trip(self, tmp_path):
        doc = formats.document_from_system(lti.mk_ldn(3, 2.0), "ldn")
        path = tmp_path / "sys.json"
        formats.write_system_document(path, doc)
        again = formats.read_system_document(path)
        assert np.array_equal(again.a, doc.a)
        assert again.kind == "ldn"

    def test_solver_condition_recorded(self):
        sys = lti.mk_poly_basis_lti(bases.shifted_legendre(4, 1.0))
        doc = formats.document_from_system(sys, "custom")
        assert doc.metadata["solver_condition"] >= 1.0

    def test_rejects_bad_version(self):
        with pytest.raises(FormatError):
            formats.parse_system_document('{"format_version": 99}')

    def test_rejects_inconsistent_shape(self):
        text = (
            '{"format_version": 1, "kind": "ldn", "q": 2, "theta": 1.0,'
            ' "a": [[1.0]], "b": [1.0, 2.0], "metadata": {}}'
        )
        with pytest.raises(FormatError):
            formats.parse_system_document(text)

    def test_rejects_junk(self):
        with pytest.raises(FormatError):
            formats.parse_system_document("not json at all {")


class TestBasisFile:
    def test_round_trip(self):
        basis = bases.random_basis(4, 1.5, seed=2)
        parsed = formats.parse_basis_file(formats.basis_to_text(basis))
        assert parsed.theta == basis.theta
        for a, b in zip(parsed.polys, basis.polys):
            assert np.array_equal(a, b)

    def test_requires_fields(self):
        with pytest.raises(FormatError):
            formats.parse_basis_file('{"theta": 1.0}')

    def test_rejects_empty_polys(self):
        with pytest.raises(FormatError):
            formats.parse_basis_file('{"theta": 1.0, "polys": []}')


class TestCsv:
    def test_write_read_round_trip(self, tmp_path):
        path = tmp_path / "data.csv"
        rows = [[0.1, -2.5e-17], [0.2, 3.0]]
        formats.write_csv(path, ["t", "x"], rows)
        header, back = formats.read_csv(path)
        assert header == ["t", "x"]
        assert np.array_equal(back, rows)

    def test_signal_round_trip(self, tmp_path):
        path = tmp_path / "sig.csv"
        t0 = 0.5
        sig = sim.Signal(samples=np.array([1.0, -1.0, 0.25]), dt=0.125)
        rows = [[t0 + k * sig.dt, sig.samples[k]] for k in range(3)]
        formats.write_csv(path, ["t", "u"], rows)
        t0_back, back = formats.read_signal_csv(path)
        assert t0_back == t0
        assert back.dt == sig.dt
        assert np.array_equal(back.samples, sig.samples)

    def test_signal_rejects_jitter(self, tmp_path):
        path = tmp_path / "sig.csv"
        formats.write_csv(path, ["t", "u"], [[0.0, 1.0], [0.1, 1.0], [0.3, 1.0]])
        with pytest.raises(NonUniformSignalError):
            formats.read_signal_csv(path)

    def test_signal_requires_t_u_header(self, tmp_path):
        path = tmp_path / "sig.csv"
        formats.write_csv(path, ["time", "value"], [[0.0, 1.0], [0.1, 1.0]])
        with pytest.raises(FormatError):
            formats.read_signal_csv(path)

    def test_trajectory_round_trip(self, tmp_path):
        path = tmp_path / "traj.csv"
        traj = sim.StateTrajectory(states=np.arange(8.0).reshape(4, 2), dt=0.25)
        formats.write_trajectory_csv(path, traj, t0=1.0)
        t0, back = formats.read_trajectory_csv(path)
        assert t0 == 1.0
        assert back.dt == 0.25
        assert np.array_equal(back.states, traj.states)

    def test_empty_rows_rejected(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("t,u\n", encoding="utf-8")
        with pytest.raises(FormatError):
            formats.read_csv(path)


class TestSvg:
    def test_deterministic(self):
        rows = np.array([[0.0, 1.0, -1.0], [1.0, 0.5, 0.5], [2.0, -1.0, 1.0]])
        a = formats.render_svg(["t", "x", "y"], rows)
        b = formats.render_svg(["t", "x", "y"], rows)
        assert a == b
        assert "svg" in a and "polyline" in a
        assert a.count("<polyline") == 2

    def test_constant_column_single_line(self):
        rows = np.array([[0.0, 2.0], [1.0, 2.0]])
        out = formats.render_svg(["t", "c"], rows)
        assert out.count("<polyline") == 1

    def test_needs_two_columns(self):
        with pytest.raises(FormatError):
            formats.render_svg(["t"], np.zeros((3, 1)))

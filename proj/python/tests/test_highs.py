import pytest

import occin

highspy = pytest.importorskip("highspy")


def solve_lp(path):
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.readModel(str(path))
    h.run()
    return h


@pytest.mark.parametrize("mode,optimum", [("bypass", 2), ("occin", 1)])
def test_exported_model_round_trip(tmp_path, mode, optimum):
    inst = occin.load_instance("wavelengths 2\ncomp 1 2 5\n", occin.load_topology("builtin:toy"))
    lp = tmp_path / "toy.lp"
    lp.write_text(occin.export_lp(inst, mode=mode))
    h = solve_lp(lp)
    assert h.getModelStatus() == highspy.HighsModelStatus.kOptimal
    assert round(h.getInfo().objective_function_value) == optimum

    sol = tmp_path / "toy.sol"
    h.writeSolution(str(sol), 0)
    s = occin.solve_via_ilp(inst, sol.read_text(), mode=mode)
    assert s.wavelength_count == optimum
    assert occin.validate(s, inst) == []

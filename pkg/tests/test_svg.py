import xml.etree.ElementTree as ET

import pytest

from halphen.svg import plot_errors

NS = "{http://www.w3.org/2000/svg}"


def circles(path):
    root = ET.parse(path).getroot()
    return [(float(c.get("cx")), float(c.get("cy"))) for c in root.iter(NS + "circle")]


def test_log_y_axis(tmp_path):
    p = plot_errors([{"label": "a", "k": [0, 1, 2], "computed": [1e-1, 1e-2, 1e-3]}],
                    tmp_path / "a.svg")
    pts = circles(p)[:3]
    dy = [pts[i + 1][1] - pts[i][1] for i in range(2)]
    # equal ratios give equal vertical steps
    assert dy[0] == pytest.approx(dy[1], abs=0.02)


def test_quadratic_x_axis(tmp_path):
    p = plot_errors([{"label": "a", "k": [0, 1, 2], "computed": [1, 1, 1]}],
                    tmp_path / "q.svg", quadratic_x=True)
    xs = [c[0] for c in circles(p)[:3]]
    assert (xs[2] - xs[0]) == pytest.approx(4 * (xs[1] - xs[0]), abs=0.05)


def test_model_line_and_well_formed(tmp_path):
    p = plot_errors([{"label": "n = 5", "k": [0, 1], "computed": [0.5, 0.1],
                      "model": [0.6, 0.09]}], tmp_path / "m.svg", title="t <x>")
    root = ET.parse(p).getroot()
    assert len(list(root.iter(NS + "polyline"))) == 1


def test_nothing_to_plot(tmp_path):
    with pytest.raises(ValueError):
        plot_errors([{"label": "a", "k": [0], "computed": [0.0]}], tmp_path / "z.svg")

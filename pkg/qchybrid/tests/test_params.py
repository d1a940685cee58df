"""
# Parameters & Param-Classes
# Unit Tests
"""

import json
import pytest
from dataclasses import asdict, FrozenInstanceError

from pydantic import ValidationError

# Import the PUT (package under test)
import qchybrid as qh


def test_params1():
    @qh.paramclass
    class MyParams:
        a = qh.Param(dtype=int, default=5, desc="your fave")

    assert qh.isparamclass(MyParams)

    m = MyParams()
    assert isinstance(m.a, int)
    assert m.a == 5
    assert isinstance(m.__params__["a"], qh.Param)
    assert m.defaults() == dict(a=5)
    assert m.descriptions() == dict(a="your fave")


def test_params2():
    @qh.paramclass
    class Pc2:
        r = qh.Param(dtype=str, desc="required")
        o = qh.Param(dtype=str, default="hmmm", desc="optional")
        f = qh.Param(dtype=list, default_factory=lambda: [1], desc="factory")

    assert Pc2.defaults() == dict(o="hmmm", f=[1])
    assert Pc2.descriptions() == dict(r="required", o="optional", f="factory")
    p = Pc2(r="provided")
    assert p.r == "provided"
    assert p.o == "hmmm"
    assert p.f == [1]


def test_nested_params():
    @qh.paramclass
    class Inner:
        i = qh.Param(dtype=int, desc="Inner int-field")

    @qh.paramclass
    class Outer:
        inner = qh.Param(dtype=Inner, desc="Inner fields")
        f = qh.Param(dtype=float, desc="A float", default=3.14159)

    d1 = {"inner": {"i": 11}, "f": 22.2}
    o1 = Outer(**d1)
    assert isinstance(o1.inner, Inner)
    assert asdict(o1) == d1
    assert qh.config_hash(o1) == qh.config_hash(Outer(**asdict(o1)))
    assert qh.config_hash(o1) != qh.config_hash(Outer(inner=Inner(12)))
    assert json.loads(qh.to_json(o1)) == d1


def test_bad_params():
    with pytest.raises(RuntimeError):

        @qh.paramclass
        class C(TabError):
            ...

    @qh.paramclass
    class C:
        a = qh.Param(dtype=int, desc="Gonna Fail!")

    with pytest.raises(RuntimeError):

        class D(C):
            ...

    with pytest.raises(TypeError):
        C()

    with pytest.raises(ValidationError):
        C(a=TabError)

    with pytest.raises(FrozenInstanceError):
        c = C(a=3)
        c.a = 4

    with pytest.raises(RuntimeError):

        @qh.paramclass
        class E:
            defaults = qh.Param(dtype=int, desc="protected name")

    with pytest.raises(RuntimeError):

        @qh.paramclass
        class F:
            a = 5

    with pytest.raises(RuntimeError):

        @qh.paramclass
        class G:
            a = qh.Param(dtype=int, desc="both", default=1, default_factory=lambda: 1)

    with pytest.raises(RuntimeError):
        qh.to_json(dict(a=1))


def test_paramclass_rejects_methods():
    with pytest.raises(RuntimeError):

        @qh.paramclass
        class Grid:
            steps = qh.Param(dtype=int, desc="intervals", default=4)

            def times(self):
                return list(range(self.steps + 1))


def test_scenario_params():
    grid = qh.scenario.TimeGrid(t_max=1.0, steps=4)
    assert qh.scenario.grid_times(grid) == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert qh.isparamclass(qh.Scenario)
    sc = qh.Scenario(name="defaults")
    assert sc.system.n == 2
    assert sc.time.order == 8
    assert len(qh.scenario.landscape_grid(qh.scenario.UniquenessSpec())) == 9**3

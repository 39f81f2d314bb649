import io
import json

import pytest

from revlogic.cli import run
from revlogic.designs import ALU_MODES

HALF_TABLE = """X,Y,S/D,B_out,C_out
0,0,0,0,0
0,1,1,1,0
1,0,1,0,0
1,1,0,0,1
"""


def call(*argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def netlist(tmp_path):
    def write(text, name="c.net"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def test_builtin_piped_into_table(monkeypatch):
    code, text, _ = call("builtin", "half-addsub")
    assert code == 0
    code, table, _ = call("table", stdin=text, monkeypatch=monkeypatch)
    assert code == 0 and table == HALF_TABLE


def test_table_formats():
    code, text, _ = call("table", "--design", "half-addsub", "--format", "json", "--constants")
    doc = json.loads(text)
    assert code == 0 and doc["format_version"] == 1
    code, text, _ = call("table", "--design", "full-addsub", "--format", "text", "--garbage")
    assert code == 0 and "g1" in text.splitlines()[0]


def test_metrics_text_and_json():
    code, text, _ = call("metrics", "--design", "full-addsub")
    assert code == 0
    assert text.strip() == "gates=2 cost=8 constants=1 garbage=1 delay=8 metric=cost015"
    code, text, _ = call("metrics", "--design", "half-addsub", "--format", "json", "--metric", "cost115")
    doc = json.loads(text)
    assert doc["quantum_cost"] == 4 and doc["format_version"] == 1


def test_eval(netlist):
    code, text, _ = call("eval", "--design", "alu:add", "--set", "X=1", "--set", "Y=1", "--set", "Z=1")
    assert code == 0 and text.startswith("C_out=1\nS=1\ngarbage[1]=")
    code, text, _ = call("eval", netlist("lines 2\n"), "--set", "x1=1", "--set", "x2=0",
                         "--format", "json")
    assert json.loads(text)["outputs"] == {"y1": 1, "y2": 0}


@pytest.mark.parametrize("name", ["half-addsub", "half-and-xor", "half-nand-xor", "half-not-copy",
                                  "half-xnor", "full-addsub", "ripple:3:add", "ripple:3:sub"])
def test_verify_builtins(name):
    code, text, _ = call("verify", "--design", name)
    assert code == 0 and text.rstrip().endswith("OK")


@pytest.mark.parametrize("mode", [m.lower() for m in ALU_MODES])
def test_verify_modes(mode, netlist):
    assert call("verify", "--design", "full-addsub", "--mode", mode)[0] == 0
    code, text, _ = call("builtin", "full-addsub")
    assert call("verify", netlist(text), "--mode", mode, "--format", "json")[0] == 0


def test_verify_mismatch_exit_3(netlist):
    path = netlist("lines 4\ngate R3_312 2 3 4\ngate R3_123 1 2 3\n")
    code, text, _ = call("verify", path, "--mode", "sub")
    assert code == 3 and "mismatch" in text
    code, text, _ = call("verify", path, "--mode", "sub", "--format", "json")
    assert code == 3 and json.loads(text)["ok"] is False


@pytest.mark.parametrize("argv", [
    ("builtin", "nope"),
    ("eval", "--design", "half-addsub", "--set", "X=2"),
    ("eval", "--design", "half-addsub", "--set", "X=1"),
    ("verify", "--design", "alu:add", "--mode", "or"),
    ("table", "/no/such/file.net"),
])
def test_usage_errors_exit_1(argv):
    code, _, err = call(*argv)
    assert code == 1 and err.startswith("revlogic:")


@pytest.mark.parametrize("argv", [("frobnicate",), ("table", "--format", "xml"), ()])
def test_argparse_errors_exit_1(argv):
    with pytest.raises(SystemExit) as info:
        call(*argv)
    assert info.value.code == 1


@pytest.mark.parametrize("text", ["lines 2\nbogus\n", "lines 2\ngate R3_123 1 2 3\n", "input 1 X\n"])
def test_parse_errors_exit_2(text, netlist):
    code, _, err = call("table", netlist(text))
    assert code == 2 and err.startswith("revlogic:")


def test_bad_spec_exit_2(netlist):
    assert call("synth", "--spec", netlist("{", "s.json"))[0] == 2


def test_too_wide_exit_4(netlist):
    code, _, err = call("table", netlist("lines 21\n"))
    assert code == 4 and "21" in err
    spec = {"width": 4, "library": ["R3", "T", "P", "F", "C", "N"], "max_gates": 12, "table": {}}
    assert call("synth", "--spec", netlist(json.dumps(spec), "s.json"))[0] == 4


def test_synth(netlist):
    spec = {"width": 3, "constants": {"3": 1},
            "table": {"00": "000", "01": "110", "10": "100", "11": "001"},
            "library": ["R3"], "max_gates": 2}
    path = netlist(json.dumps(spec), "s.json")
    code, text, _ = call("synth", "--spec", path)
    assert code == 0
    assert text.splitlines() == [
        "status=Found",
        "min_cost=4 gates=1 (within max_gates=2, max_cost=20)",
        "solution 1: R3_231 1 2 3",
    ]
    code, text, _ = call("synth", "--spec", path, "--format", "json", "--no-prune")
    doc = json.loads(text)
    assert doc["status"] == "Found" and doc["solutions"] == [["R3_231 1 2 3"]]


def test_export():
    code, text, _ = call("export", "--design", "half-addsub", "--format", "cycles")
    assert code == 0 and text == "(1,4,7,3,6,5,8,2)\n"
    code, text, _ = call("export", "--design", "half-addsub")
    assert text.splitlines()[1] == "PermList([4,1,6,7,8,5,3,2])"
    code, text, _ = call("export", "--design", "full-addsub", "--mode", "sub", "--format", "netlist")
    assert "input 2 Y" in text and "input 3 Y" in text


@pytest.mark.parametrize("argv", [
    ("table", "--design", "ripple:2:add"),
    ("metrics", "--design", "ripple:4:sub", "--format", "json"),
    ("export", "--design", "full-addsub"),
    ("verify", "--design", "alu:xnor", "--format", "json"),
])
def test_output_is_byte_identical(argv):
    first = call(*argv)
    assert all(call(*argv) == first for _ in range(3))


def test_console_script_pipeline():
    import shutil
    import subprocess

    exe = shutil.which("revlogic")
    if exe is None:
        pytest.skip("package not installed as a console script")
    net = subprocess.run([exe, "builtin", "half-addsub"], capture_output=True, text=True, check=True)
    tab = subprocess.run([exe, "table"], input=net.stdout, capture_output=True, text=True)
    assert tab.returncode == 0 and tab.stdout == HALF_TABLE

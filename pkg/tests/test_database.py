import json

import pytest

from noncongruence.analysis import Signature, analyze_pair, group_into_passports
from noncongruence.database import (_cusp_order, assign_labels, export_records,
                                    import_records, load_orbit_letters,
                                    normalize_sigma_T, parse_label,
                                    passports_to_records, record_from_dict,
                                    record_to_dict, relabel_record,
                                    render_label)
from noncongruence.errors import LabelError, RecordSchemaError
from noncongruence.pairs import PermutationPair, enumerate_classes
from noncongruence.perm import parse_cycles


@pytest.fixture
def records():
    passports = group_into_passports([analyze_pair(p)
                                      for p in enumerate_classes(7)])
    return passports_to_records(passports)


def test_render_and_parse_label():
    sig = Signature(15, 1, 2, 1, 0)
    assert render_label(sig, 3, 'a') == '15_1_2_1_0_3_a'
    assert render_label(sig, 0) == '15_1_2_1_0_0'
    assert parse_label('15_1_2_1_0_3_a') == (sig, 3, 'a')
    assert parse_label('9_1_1_1_0_0') == (Signature(9, 1, 1, 1, 0), 0, None)
    with pytest.raises(ValueError):
        render_label(sig, 0, 'A')


@pytest.mark.parametrize('label, position', [
    ('9_1_1_1_0', 9),
    ('9_1_x', 4),
    ('9_1_1_1_0_0_A', 12),
    ('9_1_1_1_0_0_a_b', 13),
    ('9_1_1_1_0_0-a', 11),
    ('9_1_1_2_0_0', 0),
])
def test_parse_label_errors(label, position):
    with pytest.raises(LabelError) as info:
        parse_label(label)
    assert info.value.position == position
    assert "position {}".format(position) in str(info.value)


def test_cusp_order():
    cycles = [(1, 2, 3), (4, 5, 6), (7, 8)]
    assert _cusp_order(cycles) == [(7, 8), (1, 2, 3), (4, 5, 6)]
    assert _cusp_order([(1, 2), (3, )]) == [(3, ), (1, 2)]
    assert _cusp_order([(1, 3), (2, 4, 5)]) == [(2, 4, 5), (1, 3)]
    assert _cusp_order([(1, ), (2, )]) == [(1, ), (2, )]


def test_normalize_puts_width_one_cusp_first():
    pair = PermutationPair.from_cycles('(1 2)(3 4)', '(2 3 4)')
    record = analyze_pair(pair)
    assert str(record.sigma_T) == '(1 3 2)'
    normalized = normalize_sigma_T(record)
    assert str(normalized.sigma_T) == '(2 4 3)'
    assert normalized.pair.canonical_key() == pair.canonical_key()
    assert normalized.signature == record.signature


def test_normalized_examples_are_fixed():
    pair = PermutationPair.from_cycles(
        '(1 15)(2 12)(3 7)(4 9)(5 13)(6 10)(8 14)',
        '(1 11 12)(2 13 6)(3 8 15)(4 10 7)(5 14 9)')
    record = analyze_pair(pair)
    assert normalize_sigma_T(record) == record


def test_normalize_is_idempotent(records):
    for record in records:
        once = normalize_sigma_T(record)
        assert normalize_sigma_T(once) == once
        assert once.pair.canonical_key() == record.pair.canonical_key()
        widths = [len(c) for c in sorted(once.sigma_T.cycles(singletons=True))]
        assert sorted(widths, reverse=True) == list(record.cusp_widths)


def test_relabel_record():
    record = analyze_pair(PermutationPair.from_cycles('(1 2)', '(2 3 4)'))
    g = parse_cycles('(1 4)', 4)
    moved = relabel_record(record, g)
    assert moved.sigma_T == moved.pair.sigma_T
    assert moved.signature == record.signature
    assert moved.pair.canonical_key() == record.pair.canonical_key()


def test_labels(records):
    assert all(r.label is not None for r in records)
    for r in records:
        sig, pid, letter = parse_label(r.label)
        assert sig == r.signature and pid == r.passport_id and letter is None
    unlabelled = [analyze_pair(p) for p in enumerate_classes(4)]
    assert all(r.label is None for r in assign_labels(unlabelled))


def test_orbit_letters(tmp_path, records):
    record = records[0]
    path = tmp_path / 'orbits.json'
    path.write_text(json.dumps([{'sigma_s': list(record.pair.sigma_S.images),
                                 'sigma_r': list(record.pair.sigma_R.images),
                                 'letter': 'b'}]))
    letters = load_orbit_letters(str(path))
    assert letters == {str(record.pair.canonical_key()): 'b'}
    labelled = assign_labels(records, letters)
    assert labelled[0].label.endswith('_b')
    assert all(parse_label(r.label)[2] is None for r in labelled[1:])

    with pytest.raises(FileNotFoundError):
        load_orbit_letters(str(tmp_path / 'missing.json'))
    path.write_text(json.dumps([{'sigma_s': [1], 'sigma_r': [1], 'letter': '7'}]))
    with pytest.raises(RecordSchemaError, match="record 0"):
        load_orbit_letters(str(path))


def test_export_import(tmp_path, records):
    path = tmp_path / 'records.json'
    export_records(records, str(path))
    assert import_records(str(path)) == records
    payload = json.loads(path.read_text())
    assert list(payload[0]) == list(record_to_dict(records[0]))
    assert isinstance(payload[0]['monodromy_order'], str)


def test_export_is_deterministic(tmp_path, records):
    a, b = tmp_path / 'a.json', tmp_path / 'b.json'
    export_records(records, str(a))
    export_records(list(records), str(b))
    assert a.read_text() == b.read_text()


@pytest.mark.parametrize('field, value, message', [
    ('sigma_t', [1, 2, 3, 4, 5, 6, 7], "sigma_t"),
    ('sigma_s', [1, 1, 3, 4, 5, 6, 7], "bijection"),
    ('cusp_widths', [7, 1], "sum"),
    ('generalized_level', 1000, "lcm"),
    ('is_congruence', 'yes', "boolean"),
    ('monodromy_order', 5040, "decimal string"),
    ('passport_id', '0', "integer or null"),
    ('genus', 5, "signature"),
])
def test_schema_errors(records, field, value, message):
    data = record_to_dict(records[0])
    data[field] = value
    with pytest.raises(RecordSchemaError, match=message):
        record_from_dict(data, 4)


def test_schema_missing_field(records):
    data = record_to_dict(records[0])
    del data['sigma_r']
    with pytest.raises(RecordSchemaError, match="record 2: missing"):
        record_from_dict(data, 2)


def test_import_errors(tmp_path):
    path = tmp_path / 'bad.json'
    path.write_text('{not json')
    with pytest.raises(RecordSchemaError):
        import_records(str(path))
    path.write_text('{}')
    with pytest.raises(RecordSchemaError):
        import_records(str(path))
    with pytest.raises(OSError):
        import_records(str(tmp_path / 'missing.json'))

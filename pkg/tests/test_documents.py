#!/usr/bin/env python3
"""
Tests for JSON documents: parsing with field paths, golden certificates and exports
"""

import json
import logging
import sys
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

# Add the repository root to path (adjust for tests/ subdirectory)
sys.path.insert(0, str(Path(__file__).parent.parent))

import pandas as pd

from src.app_state import AppState
from src.core.feasible_set import ExplicitPoints, IntegerPolytope
from src.core.helly import witness_report
from src.core.numerics import Vector
from src.core.objective import MaxAffine, Quadratic, Sum
from src.errors import DocumentError, MixedIntegerNotSupported
from src.services.certificate_service import CertificateService, ContinuousOptimumOutcome, InfeasibleOutcome
from src.services.document_service import DocumentService
from src.services.export_service import ExportService

logging.basicConfig(level=logging.WARNING, format='%(levelname)s: %(message)s')

INSTANCES = Path(__file__).parent.parent / 'instances'


def vec(*values):
    return Vector(tuple(Fraction(v) for v in values))


def square_instance():
    return {
        'dimension': 2,
        'objective': {'type': 'quadratic', 'A': [[2, 0], [0, 2]], 'b': [-1, -1], 'c': '1/2'},
        'set': {'type': 'points', 'points': [[0, 0], [1, 0], [0, 1], [1, 1]]},
    }


class ParseTests(unittest.TestCase):

    def setUp(self):
        self.documents = DocumentService()

    def test_golden_instances(self):
        square = self.documents.parse_instance(self.documents.load(INSTANCES / 'unit_square_quadratic.json'))
        self.assertIsInstance(square.objective, Quadratic)
        self.assertIsInstance(square.set, ExplicitPoints)
        self.assertEqual(square.options, {'epsilon': Fraction(1, 2)})
        slab = self.documents.parse_instance(self.documents.load(INSTANCES / 'slab_max_affine.json'))
        self.assertIsInstance(slab.objective, MaxAffine)
        self.assertIsInstance(slab.set, IntegerPolytope)

    def test_sum_objective(self):
        data = square_instance()
        data['objective'] = {'type': 'sum', 'terms': [data['objective'],
                                                      {'type': 'max_affine', 'pieces': [{'gradient': [1, 0]}]}]}
        f = self.documents.parse_instance(data).objective
        self.assertIsInstance(f, Sum)
        self.assertEqual(f.evaluate(vec(1, 0)), Fraction(3, 2))

    def test_float_rejected_with_field(self):
        data = square_instance()
        data['objective']['A'][0][1] = 0.5
        with self.assertRaises(DocumentError) as ctx:
            self.documents.parse_instance(data)
        self.assertEqual(ctx.exception.field, 'objective.A[0][1]')
        self.assertEqual(ctx.exception.reason, 'floats not accepted; use p/q')

    def test_decimal_string_rejected(self):
        data = square_instance()
        data['objective']['c'] = '0.5'
        with self.assertRaises(DocumentError) as ctx:
            self.documents.parse_instance(data)
        self.assertEqual(ctx.exception.field, 'objective.c')

    def test_missing_and_unknown_fields(self):
        data = square_instance()
        del data['dimension']
        with self.assertRaises(DocumentError) as ctx:
            self.documents.parse_instance(data)
        self.assertEqual(ctx.exception.field, 'dimension')

        data = square_instance()
        data['set']['type'] = 'lattice'
        with self.assertRaises(DocumentError) as ctx:
            self.documents.parse_instance(data)
        self.assertEqual(ctx.exception.field, 'set.type')

        data = square_instance()
        data['options'] = {'tolerance': 1}
        with self.assertRaises(DocumentError) as ctx:
            self.documents.parse_instance(data)
        self.assertEqual(ctx.exception.field, 'options.tolerance')

    def test_wrong_lengths(self):
        data = square_instance()
        data['set']['points'][2] = [0, 1, 2]
        with self.assertRaises(DocumentError) as ctx:
            self.documents.parse_instance(data)
        self.assertEqual(ctx.exception.field, 'set.points[2]')

    def test_not_psd(self):
        data = square_instance()
        data['objective']['A'] = [[1, 2], [2, 1]]
        with self.assertRaises(DocumentError) as ctx:
            self.documents.parse_instance(data)
        self.assertEqual(ctx.exception.field, 'objective')

    def test_integer_box_bounds(self):
        data = square_instance()
        data['set'] = {'type': 'integer_polytope', 'box': {'lower': [0, '1/2'], 'upper': [2, 2]}}
        with self.assertRaises(DocumentError) as ctx:
            self.documents.parse_instance(data)
        self.assertEqual(ctx.exception.field, 'set.box.lower[1]')

    def test_mixed_integer_sets(self):
        data = square_instance()
        data['set'] = {'type': 'mixed_integer', 'continuous': [1]}
        with self.assertRaises(MixedIntegerNotSupported):
            self.documents.parse_instance(data)

    def test_enum_cap_option(self):
        data = square_instance()
        data['options'] = {'enum_cap': 50, 'box_inflate': '3/2'}
        options = self.documents.parse_instance(data).options
        self.assertEqual(options['enum_cap'], 50)
        self.assertEqual(options['box_inflate'], Fraction(3, 2))

    def test_enum_cap_must_be_a_positive_integer(self):
        for cap in ('5/2', 0, -3):
            data = square_instance()
            data['options'] = {'enum_cap': cap}
            with self.subTest(cap=cap):
                with self.assertRaises(DocumentError) as ctx:
                    self.documents.parse_instance(data)
                self.assertEqual(ctx.exception.field, 'options.enum_cap')

    def test_invalid_json(self):
        with tempfile.TemporaryDirectory() as tmp:
            broken = Path(tmp) / 'broken.json'
            broken.write_text('{"dimension": 2,', encoding='utf-8')
            with self.assertRaises(DocumentError):
                self.documents.load(broken)
            listed = Path(tmp) / 'list.json'
            listed.write_text('[1, 2]', encoding='utf-8')
            with self.assertRaises(DocumentError):
                self.documents.load(listed)


class OutcomeDocumentTests(unittest.TestCase):

    def setUp(self):
        self.documents = DocumentService()
        self.solver = CertificateService()

    def _solve(self, name):
        instance = self.documents.parse_instance(self.documents.load(INSTANCES / f'{name}.json'))
        return instance, self.solver.solve(instance.objective, instance.set)

    def test_golden_certificates(self):
        for name in ('unit_square_quadratic', 'slab_max_affine'):
            instance, outcome = self._solve(name)
            expected = json.loads((INSTANCES / f'{name}.certificate.json').read_text(encoding='utf-8'))
            self.assertEqual(self.documents.serialize_outcome(outcome, instance.dimension), expected)

    def test_certificate_round_trip(self):
        _, outcome = self._solve('slab_max_affine')
        parsed = self.documents.parse_outcome(self.documents.serialize_outcome(outcome))
        self.assertEqual(parsed.certificate, outcome.certificate)
        self.assertEqual(parsed.iterations, outcome.iterations)
        self.assertEqual(parsed.optimum, 0)

    def test_continuous_document(self):
        _, outcome = self._solve('centered_continuous')
        document = self.documents.serialize_outcome(outcome)
        self.assertEqual(document['kind'], 'continuous_optimum')
        self.assertEqual(document['point'], ['1/2', '1/2'])
        self.assertEqual(document['value'], '0')
        self.assertIsInstance(self.documents.parse_outcome(document), ContinuousOptimumOutcome)

    def test_infeasible_document(self):
        document = self.documents.serialize_outcome(InfeasibleOutcome(), 2)
        self.assertEqual(document['kind'], 'infeasible')
        self.assertEqual(document['dimension'], 2)
        self.assertIsInstance(self.documents.parse_outcome(document), InfeasibleOutcome)

    def test_unknown_kind(self):
        with self.assertRaises(DocumentError) as ctx:
            self.documents.parse_outcome({'kind': 'guess', 'dimension': 2})
        self.assertEqual(ctx.exception.field, 'kind')

    def test_verification_document(self):
        instance, outcome = self._solve('unit_square_quadratic')
        report = self.solver.verify(outcome.certificate, instance.objective, instance.set, Fraction(1, 2))
        document = self.documents.serialize_verification(report)
        self.assertTrue(document['passed'])
        self.assertEqual(document['epsilon'], '1/2')
        self.assertEqual(document['maximality'], [True] * 4)
        self.assertEqual(document['helly_bound'], 4)


class WitnessDocumentTests(unittest.TestCase):

    def test_square_witness(self):
        documents = DocumentService()
        witness = documents.parse_witness(documents.load(INSTANCES / 'square_witness.json'))
        self.assertEqual(len(witness.regions), 4)
        document = documents.serialize_witness_report(witness_report(witness))
        self.assertEqual(document, {'valid': True, 'lower_bound': 4, 'failing_condition': None,
                                    'witness_point': None, 'failing_index': None})

    def test_unknown_region(self):
        documents = DocumentService()
        data = json.loads((INSTANCES / 'square_witness.json').read_text(encoding='utf-8'))
        data['regions'][1]['type'] = 'ball'
        with self.assertRaises(DocumentError) as ctx:
            documents.parse_witness(data)
        self.assertEqual(ctx.exception.field, 'regions[1].type')


class ExportTests(unittest.TestCase):

    def setUp(self):
        self.documents = DocumentService()
        instance = self.documents.parse_instance(self.documents.load(INSTANCES / 'unit_square_quadratic.json'))
        self.app_state = AppState()
        self.app_state.load_instance(instance)
        self.app_state.outcome = CertificateService().solve(instance.objective, instance.set)
        self.export = ExportService(self.app_state)

    def test_certificate_table(self):
        table = self.export.certificate_table()
        self.assertEqual(list(table['k']), [1, 2, 3, 4])
        self.assertEqual(list(table['offset']), ['0', '1', '1', '2'])
        self.assertEqual(list(table['tie_set_size']), [4, 3, 2, 1])
        self.assertEqual(list(table['a_2']), ['-1', '1', '-1', '1'])

    def test_tsv_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            tsv = self.export.export_tsv(str(Path(tmp) / 'out' / 'square.tsv'))
            table = pd.read_csv(tsv, sep='\t', dtype=str)
            self.assertEqual(list(table['value']), ['1/2'] * 4)

    def test_json_document_saved(self):
        with tempfile.TemporaryDirectory() as tmp:
            document = self.documents.serialize_outcome(self.app_state.outcome)
            path = self.documents.save(document, str(Path(tmp) / 'square.json'))
            self.assertEqual(json.loads(Path(path).read_text(encoding='utf-8')), document)


if __name__ == "__main__":
    unittest.main()
